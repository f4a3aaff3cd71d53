#ifndef PROBCSP_RATIONAL_HPP
#define PROBCSP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace probcsp {

// Enumeration results are kept as exact rationals so oracle comparisons carry
// no floating-point ambiguity; conversion to double happens only at the
// comparison or reporting boundary.
using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// C(n, k), exact; 0 when k < 0 or k > n.
bigint binomial(int n, int k);

inline double to_double(const bigrat& r) { return r.convert_to<double>(); }

// "num/den" in lowest terms, "0"/"1"-style for integers
inline std::string rat_string(const bigrat& r) { return r.str(); }

}  // namespace probcsp

#endif
