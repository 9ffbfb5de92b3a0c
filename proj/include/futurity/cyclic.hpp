#pragma once

namespace futurity {

// Maps any integer (possibly negative) into {0, ..., n-1} modulo n.
// Every cyclic-index formula in the library routes through this helper so
// that the negative-subscript conventions stay in one place.
constexpr int cyc(long long idx, int n) {
  long long r = idx % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace futurity
