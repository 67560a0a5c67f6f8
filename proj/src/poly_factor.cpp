#include <algorithm>
#include <random>

#include "kmw/poly.hpp"

namespace kmw {

namespace {

FqPoly pth_root(const FiniteField& f, const FqPoly& c) {
  const std::uint32_t p = f.characteristic();
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, f.degree() - 1);
  FqPoly r;
  for (std::size_t i = 0; i < c.size(); i += p) r.push_back(f.pow(c[i], e));
  return r;
}

void sqf_rec(const FiniteField& f, const FqPoly& a, int mult, std::vector<std::pair<FqPoly, int>>& out) {
  PolyAlg<FqOps> R(FqOps{&f});
  FqPoly c = R.gcd(a, R.derivative(a));
  FqPoly w = R.quo(a, c);
  int i = 1;
  while (R.deg(w) > 0) {
    FqPoly y = R.gcd(w, c);
    FqPoly z = R.quo(w, y);
    if (R.deg(z) > 0) out.emplace_back(R.monic(z), i * mult);
    ++i;
    w = std::move(y);
    c = R.quo(c, w);
  }
  if (R.deg(c) > 0) sqf_rec(f, R.monic(pth_root(f, c)), mult * static_cast<int>(f.characteristic()), out);
}

template <class Poly>
void sort_factors(std::vector<std::pair<Poly, int>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return std::lexicographical_compare(x.first.rbegin(), x.first.rend(), y.first.rbegin(), y.first.rend());
  });
}

void equal_degree_split(const PolyAlg<FqOps>& R, const FiniteField& f, const FqPoly& g, long d,
                        std::mt19937_64& rng, std::vector<FqPoly>& out) {
  if (R.deg(g) == d) {
    out.push_back(g);
    return;
  }
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(f.order()), static_cast<unsigned long>(d));
  mpz_class e = (qd - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coef(0, f.order() - 1);
  for (;;) {
    FqPoly a(static_cast<std::size_t>(R.deg(g)));
    for (auto& c : a) c = static_cast<FiniteField::Elem>(coef(rng));
    R.trim(a);
    if (R.deg(a) < 1) continue;
    FqPoly b = R.sub(R.powmod(a, e, g), R.one());
    FqPoly h = R.gcd(g, b);
    if (R.deg(h) > 0 && R.deg(h) < R.deg(g)) {
      equal_degree_split(R, f, h, d, rng, out);
      equal_degree_split(R, f, R.quo(g, h), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FqPoly, int>> squarefree_factor(const FiniteField& f, const FqPoly& a) {
  PolyAlg<FqOps> R(FqOps{&f});
  FqPoly m = a;
  R.trim(m);
  if (m.empty()) throw Error(Errc::ZeroPolynomial, "square-free factorization of zero");
  std::vector<std::pair<FqPoly, int>> out;
  if (R.deg(m) == 0) return out;
  sqf_rec(f, R.monic(m), 1, out);
  sort_factors(out);
  return out;
}

std::vector<std::pair<QPoly, int>> squarefree_factor(const QPoly& a) {
  PolyAlg<QOps> R(QOps{});
  QPoly m = a;
  R.trim(m);
  if (m.empty()) throw Error(Errc::ZeroPolynomial, "square-free factorization of zero");
  std::vector<std::pair<QPoly, int>> out;
  if (R.deg(m) == 0) return out;
  m = R.monic(m);
  QPoly c = R.gcd(m, R.derivative(m));
  QPoly w = R.quo(m, c);
  int i = 1;
  while (R.deg(w) > 0) {
    QPoly y = R.gcd(w, c);
    QPoly z = R.quo(w, y);
    if (R.deg(z) > 0) out.emplace_back(R.monic(z), i);
    ++i;
    w = std::move(y);
    c = R.quo(c, w);
  }
  return out;
}

std::vector<std::pair<FqPoly, int>> factor_poly(const FiniteField& f, const FqPoly& a) {
  PolyAlg<FqOps> R(FqOps{&f});
  std::mt19937_64 rng(0x6b6d77ULL);
  std::vector<std::pair<FqPoly, int>> out;
  const mpz_class q = static_cast<unsigned long>(f.order());
  for (const auto& [sq, mult] : squarefree_factor(f, a)) {
    // Distinct-degree split.
    FqPoly rest = sq;
    FqPoly h = R.var();
    for (long i = 1; 2 * i <= R.deg(rest); ++i) {
      h = R.powmod(h, q, rest);
      FqPoly g = R.gcd(rest, R.sub(h, R.var()));
      if (R.deg(g) > 0) {
        std::vector<FqPoly> parts;
        equal_degree_split(R, f, g, i, rng, parts);
        for (auto& p : parts) out.emplace_back(R.monic(p), mult);
        rest = R.quo(rest, g);
        h = R.mod(h, rest);
      }
    }
    if (R.deg(rest) > 0) out.emplace_back(R.monic(rest), mult);
  }
  sort_factors(out);
  return out;
}

bool is_irreducible(const FiniteField& f, const FqPoly& a) {
  auto fac = factor_poly(f, a);
  return fac.size() == 1 && fac[0].second == 1;
}

}  // namespace kmw
