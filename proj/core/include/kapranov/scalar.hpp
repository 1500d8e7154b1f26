#pragma once

#include <gmpxx.h>

#include <string>

namespace kap {

using Scalar = mpq_class;

// Accepts "p", "-p", "p/q"; the result is canonicalized.
Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& s);

inline Scalar sign_scalar(int s) { return Scalar(s < 0 ? -1 : 1); }
inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace kap
