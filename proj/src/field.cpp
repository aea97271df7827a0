#include "fqpat/field.hpp"

#include <algorithm>

namespace fqpat {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotAPrimePower: return "NotAPrimePower";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::CharTwo: return "CharTwo";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::WrongCardinality: return "WrongCardinality";
    case Errc::EmptySet: return "EmptySet";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadParams: return "BadParams";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

// Polynomials over GF(p) as coefficient vectors, c[i] = coefficient of x^i,
// trailing (leading-degree) zeros allowed. Used only at construction time.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// f mod g, g monic of degree dg >= 1.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  int dg = degree(g);
  for (int df = degree(f); df >= dg; df = degree(f)) {
    std::uint32_t lead = f[df];
    int shift = df - dg;
    for (int i = 0; i <= dg; ++i) {
      std::uint64_t t = static_cast<std::uint64_t>(lead) * g[i] % p;
      f[i + shift] = static_cast<std::uint32_t>((f[i + shift] + p - t) % p);
    }
  }
  f.resize(dg);
  return f;
}

bool poly_is_zero(const Poly& f) { return degree(f) < 0; }

// Irreducible over GF(p) iff no monic divisor of degree 1..deg/2 divides it.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  int d = degree(f);
  for (int dd = 1; dd <= d / 2; ++dd) {
    std::uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    Poly g(dd + 1, 0);
    g[dd] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (int i = 0; i < dd; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(std::uint32_t q) {
  if (q < 2 || q > (1u << 16)) fail(Errc::NotAPrimePower, "q must be in [2, 2^16], got " + std::to_string(q));
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself prime
  std::uint32_t k = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) fail(Errc::NotAPrimePower, std::to_string(q) + " is not a prime power");
  p_ = p;
  k_ = k;
  q_ = q;

  if (k_ > 1) {
    // Candidates x^k + c, c enumerated by increasing integer value; digit
    // order of c matches the element encoding, so value order equals
    // lexicographic order on coefficients read from degree k-1 downward.
    Poly f(k_ + 1, 0);
    f[k_] = 1;
    bool found = false;
    for (std::uint32_t c = 0; c < q_; ++c) {
      std::uint32_t cc = c;
      for (std::uint32_t i = 0; i < k_; ++i) {
        f[i] = cc % p_;
        cc /= p_;
      }
      if (is_irreducible(f, p_)) {
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::Internal, "no irreducible polynomial found for q=" + std::to_string(q_));
    red_.assign(f.begin(), f.end());
  }

  if (q_ <= 256) {
    tables_ = true;
    add_t_.resize(static_cast<std::size_t>(q_) * q_);
    mul_t_.resize(static_cast<std::size_t>(q_) * q_);
    neg_t_.resize(q_);
    inv_t_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        add_t_[a * q_ + b] = add_slow(a, b);
        mul_t_[a * q_ + b] = mul_slow(a, b);
      }
    }
    for (Elem a = 0; a < q_; ++a) neg_t_[a] = neg_slow(a);
    for (Elem a = 1; a < q_; ++a) inv_t_[a] = inv_slow(a);
  }
}

Field::Elem Field::add_slow(Elem a, Elem b) const {
  if (k_ == 1) return (a + b) % p_;
  Elem out = 0, mult = 1;
  while (a != 0 || b != 0) {
    out += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

Field::Elem Field::neg_slow(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem out = 0, mult = 1;
  while (a != 0) {
    Elem d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return out;
}

Field::Elem Field::mul_slow(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  // Digit convolution followed by reduction mod red_.
  std::uint32_t da[17], db[17];
  std::uint64_t prod[34] = {0};
  std::uint32_t na = 0, nb = 0;
  while (a != 0) {
    da[na++] = a % p_;
    a /= p_;
  }
  while (b != 0) {
    db[nb++] = b % p_;
    b /= p_;
  }
  if (na == 0 || nb == 0) return 0;
  for (std::uint32_t i = 0; i < na; ++i)
    for (std::uint32_t j = 0; j < nb; ++j) prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
  for (int i = static_cast<int>(na + nb) - 2; i >= static_cast<int>(k_); --i) {
    std::uint64_t lead = prod[i] % p_;
    if (lead == 0) continue;
    // subtract lead * x^(i-k) * red_
    for (std::uint32_t j = 0; j <= k_; ++j) {
      std::uint64_t t = lead * red_[j] % p_;
      std::uint64_t idx = i - k_ + j;
      prod[idx] = (prod[idx] % p_ + p_ - t) % p_;
    }
  }
  Elem out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += static_cast<Elem>(prod[i] % p_) * mult;
    mult *= p_;
  }
  return out;
}

Field::Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem out = 1;
  while (e != 0) {
    if (e & 1) out = mul(out, a);
    a = mul(a, a);
    e >>= 1;
  }
  return out;
}

Field::Elem Field::inv_slow(Elem a) const { return pow(a, q_ - 2); }

Field::Elem Field::inv(Elem a) const {
  if (a == 0) fail(Errc::BadParams, "inverse of zero");
  return tables_ ? inv_t_[a] : inv_slow(a);
}

}  // namespace fqpat
