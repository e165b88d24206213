#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace rootcone {

// All scalar arithmetic in this project is exact. Int is an arbitrary
// precision integer, Rat a rational kept in lowest terms with positive
// denominator (both invariants are maintained by the backing type).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Thrown when a computed certificate fails its own exact re-verification.
// Callers treat it as an internal consistency failure, never as user error.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

std::string rat_str(const Rat& r);
Rat rat_parse(const std::string& s);  // "p", "-p", "p/q"

}  // namespace rootcone
