#include "fqpat/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

namespace fqpat {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

BigInt gaussian_binomial(std::uint32_t n, std::uint32_t m, std::uint32_t q) {
  if (q < 2) fail(Errc::BadParams, "q must be >= 2");
  if (m > n) fail(Errc::BadParams, "need 0 <= m <= n");
  BigInt qn = boost::multiprecision::pow(BigInt(q), n);
  BigInt qm = boost::multiprecision::pow(BigInt(q), m);
  BigInt num = 1, den = 1, qi = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    num *= qn - qi;
    den *= qm - qi;
    qi *= q;
  }
  BigInt out = num / den;
  if (out * den != num) fail(Errc::Internal, "Gaussian binomial division not exact");
  return out;
}

BigInt family_size(const PatternFamily& family) {
  if (family.kind() == FamilyKind::Plane) {
    const Space& S = family.space();
    BigInt g = gaussian_binomial(S.n(), family.plane_dim(), S.q());
    return g * boost::multiprecision::pow(BigInt(S.q()), S.n() - family.plane_dim());
  }
  return BigInt(family.structured_count());
}

IntersectionCensus intersection_census(const PatternFamily& family) {
  BigInt big_a = family_size(family);
  if (big_a > family.caps().max_pair_census)
    fail(Errc::TooLarge, "|A| exceeds the pairwise census cap");
  const auto& flat = family.flat_patterns();
  const std::uint64_t a = family.arity();
  const std::uint64_t P = flat.size() / a;

  // bucket patterns by point; only intersecting pairs are materialized
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> through;
  through.reserve(P * a);
  for (std::uint64_t id = 0; id < P; ++id)
    for (std::uint64_t i = 0; i < a; ++i) through[flat[id * a + i]].push_back(static_cast<std::uint32_t>(id));

  std::vector<std::uint64_t> keys;
  for (const auto& [pt, ids] : through) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        keys.push_back(static_cast<std::uint64_t>(ids[i]) * P + ids[j]);
    if (keys.size() > 80'000'000) fail(Errc::TooLarge, "intersection census workload exceeds the cap");
  }
  std::sort(keys.begin(), keys.end());

  IntersectionCensus c;
  c.a = a;
  c.I.assign(a + 1, BigInt(0));
  c.I[a] = BigInt(P);  // equal-set pairs
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    std::uint64_t shared = j - i;  // |T inter T'| for this unordered pair
    if (shared > a - 1) fail(Errc::Internal, "distinct patterns sharing >= a points");
    c.I[shared] += 2;  // both orders
    i = j;
  }
  BigInt rest = BigInt(P) * P;
  for (std::uint64_t k = 1; k <= a; ++k) rest -= c.I[k];
  c.I[0] = rest;
  return c;
}

double expected_X(const PatternFamily& family, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) fail(Errc::BadParams, "delta must be in [0, 1]");
  if (delta == 0.0) return 0.0;
  // log-domain so that huge |A| at tiny delta stays finite
  using bf = boost::multiprecision::cpp_bin_float_50;
  double logA = static_cast<double>(boost::multiprecision::log(bf(family_size(family))));
  return std::exp(logA + static_cast<double>(family.arity()) * std::log(delta));
}

double expected_Y(const PatternFamily& family, const IntersectionCensus& c, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) fail(Errc::BadParams, "delta must be in [0, 1]");
  const std::uint64_t a = family.arity();
  double out = 0.0;
  for (std::uint64_t k = 1; k + 1 <= a; ++k)
    out += static_cast<double>(c.I[k]) * std::pow(delta, static_cast<double>(2 * a - k));
  return out;
}

double threshold(const PatternFamily& family) {
  const double q = static_cast<double>(family.space().q());
  const double n = static_cast<double>(family.space().n());
  switch (family.kind()) {
    case FamilyKind::ThreeAp: return std::pow(q, -2.0 * n / 3.0);
    case FamilyKind::RightTriangle: return std::pow(q, -n + 1.0 / 3.0);
    case FamilyKind::Parallelogram: return std::pow(q, -3.0 * n / 4.0);
    case FamilyKind::Plane: {
      double qm = std::pow(q, static_cast<double>(family.plane_dim()));
      return std::pow(q, -(family.plane_dim() + 1.0) * n / qm);
    }
  }
  fail(Errc::Internal, "unknown kind");
}

CensusReport condition_report(const PatternFamily& family, double delta) {
  CensusReport r;
  r.kind = family.kind();
  r.q = family.space().q();
  r.n = family.space().n();
  r.m = family.plane_dim();
  r.delta = delta;
  r.A_size = family_size(family);
  IntersectionCensus c = intersection_census(family);
  r.I = c.I;
  r.E_X = expected_X(family, delta);
  r.E_Y = expected_Y(family, c, delta);
  BigRat c1(c.I[0], r.A_size * r.A_size);
  r.ratio_C1 = static_cast<double>(c1);
  r.ratio_C2 = r.E_X > 0.0 ? r.E_Y / (r.E_X * r.E_X) : 0.0;
  r.t = threshold(family);
  if (family.kind() == FamilyKind::Plane && delta > 0.0) {
    const double q = static_cast<double>(r.q);
    for (std::uint32_t k = 0; k < r.m; ++k) {
      double qk = std::pow(q, static_cast<double>(k));
      r.plane_diagnostics.push_back(std::pow(q, -static_cast<double>(r.n) * (k + 1)) *
                                    std::pow(delta, -qk));
    }
  }
  return r;
}

BigRat er_containment_prob(std::uint32_t q, std::uint32_t n, std::uint64_t M, std::uint64_t f) {
  if (q < 2 || n == 0) fail(Errc::BadParams, "need q >= 2 and n >= 1");
  BigInt N = boost::multiprecision::pow(BigInt(q), n);
  if (BigInt(M) > N) fail(Errc::BadParams, "M exceeds q^n");
  if (f > M) fail(Errc::BadParams, "need f <= M");
  BigRat out = 1;
  for (std::uint64_t i = 0; i < f; ++i) out *= BigRat(BigInt(M - i), N - i);
  return out;
}

std::string census_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["family"] = kind_name(r.kind);
  j["q"] = r.q;
  j["n"] = r.n;
  j["m"] = r.m;
  j["A_size"] = r.A_size.str();
  nlohmann::ordered_json ik = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < r.I.size(); ++k) ik[std::to_string(k)] = r.I[k].str();
  j["I"] = ik;
  j["delta"] = r.delta;
  j["E_X"] = r.E_X;
  j["E_Y"] = r.E_Y;
  j["t"] = r.t;
  j["ratios"] = {{"C1", r.ratio_C1}, {"C2", r.ratio_C2}};
  if (!r.plane_diagnostics.empty()) j["plane_diagnostics"] = r.plane_diagnostics;
  return j.dump(2) + "\n";
}

std::string census_csv(const CensusReport& r) {
  std::string out = "family,q,n,m,k,I_k,A_size,delta,E_X,E_Y,t,ratio_C1,ratio_C2\n";
  for (std::size_t k = 0; k < r.I.size(); ++k) {
    out += kind_name(r.kind);
    out += "," + std::to_string(r.q) + "," + std::to_string(r.n) + "," + std::to_string(r.m);
    out += "," + std::to_string(k) + "," + r.I[k].str();
    out += "," + r.A_size.str();
    out += "," + fmt_double(r.delta) + "," + fmt_double(r.E_X) + "," + fmt_double(r.E_Y);
    out += "," + fmt_double(r.t) + "," + fmt_double(r.ratio_C1) + "," + fmt_double(r.ratio_C2);
    out += "\n";
  }
  return out;
}

}  // namespace fqpat
