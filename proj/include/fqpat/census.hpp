#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "fqpat/patterns.hpp"

namespace fqpat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// |G(n,m)|, the number of m-dimensional subspaces of F_q^n:
//   (q^n - 1)(q^n - q)...(q^n - q^(m-1)) / (q^m - 1)(q^m - q)...(q^m - q^(m-1))
// Exact integer arithmetic; the division is exact. Throws BadParams.
BigInt gaussian_binomial(std::uint32_t n, std::uint32_t m, std::uint32_t q);

// Exact |A|: planes by |A(n,m)| = |G(n,m)| q^(n-m), other kinds by structured
// counting (TooLarge beyond the enumeration caps).
BigInt family_size(const PatternFamily& family);

// Ordered-pair intersection classes I_k = {(T,T') : |T inter T'| = k}, k = 0..a.
struct IntersectionCensus {
  std::uint64_t a = 0;
  std::vector<BigInt> I;  // size a+1

  BigInt total() const {
    BigInt s = 0;
    for (const auto& v : I) s += v;
    return s;
  }
};

IntersectionCensus intersection_census(const PatternFamily& family);

double expected_X(const PatternFamily& family, double delta);  // |A| delta^a
double expected_Y(const PatternFamily& family, const IntersectionCensus& c, double delta);

// Threshold scale t(n,q) separating vanishing from full containment odds:
//   q^(-2n/3) 3-APs, q^(-n+1/3) right triangles, q^(-3n/4) parallelograms,
//   q^(-(m+1)n/q^m) m-planes.
double threshold(const PatternFamily& family);

struct CensusReport {
  FamilyKind kind;
  std::uint32_t q = 0, n = 0, m = 0;
  double delta = 0.0;
  BigInt A_size;
  std::vector<BigInt> I;  // I_k, k = 0..a
  double E_X = 0.0, E_Y = 0.0;
  double ratio_C1 = 0.0;  // |I_0| / |A|^2
  double ratio_C2 = 0.0;  // E(Y) / E(X)^2
  double t = 0.0;
  // For planes: q^{-n(k+1)} delta^{-q^k}, k = 0..m-1.
  std::vector<double> plane_diagnostics;
};

CensusReport condition_report(const PatternFamily& family, double delta);

// Exact containment probability of a fixed f-point set under Omega(F_q^n, M):
//   M(M-1)...(M-f+1) / q^n(q^n-1)...(q^n-f+1)
BigRat er_containment_prob(std::uint32_t q, std::uint32_t n, std::uint64_t M, std::uint64_t f);

// Report serialization. JSON keys: family, q, n, m, A_size, I, E_X, E_Y, t,
// ratios; exact integers are emitted as decimal strings. CSV: one row per k.
std::string census_json(const CensusReport& r);
std::string census_csv(const CensusReport& r);

// Fixed double formatting used by every writer ("%.12g").
std::string fmt_double(double x);

}  // namespace fqpat
