#include "kmw/sampling.hpp"

namespace kmw {

namespace {

Elem random_base(const Field& f, Rng& rng, const SampleBounds& b) {
  if (f.is_finite()) {
    std::uniform_int_distribution<std::uint32_t> d(1, static_cast<std::uint32_t>(f.fq().order() - 1));
    return Elem{d(rng)};
  }
  std::uniform_int_distribution<long> num(-b.height, b.height), den(1, b.height);
  long n = 0;
  while (n == 0) n = num(rng);
  mpq_class r(n, std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? den(rng) : 1);
  r.canonicalize();
  return f.from_rational(r);
}

}  // namespace

Elem random_constant(const Field& f, Rng& rng, const SampleBounds& b) {
  if (!f.is_function_field()) return random_base(f, rng, b);
  return f.from_base(random_base(f.base(), rng, b));
}

Elem random_nonzero(const Field& f, Rng& rng, const SampleBounds& b) {
  if (!f.is_function_field()) return random_base(f, rng, b);
  Field k = f.base();
  std::uniform_int_distribution<int> deg(0, b.degree);
  auto poly = [&](int d, bool monic) {
    if (k.is_finite()) {
      std::uniform_int_distribution<std::uint32_t> c(0, static_cast<std::uint32_t>(k.fq().order() - 1));
      FqPoly p(d + 1);
      for (auto& x : p) x = c(rng);
      p[d] = monic ? 1 : std::get<FiniteField::Elem>(random_base(k, rng, b).v);
      return Elem{FqRat{p, {1}}};
    }
    std::uniform_int_distribution<long> c(-9, 9);
    QPoly p(d + 1);
    for (auto& x : p) x = c(rng);
    p[d] = monic ? mpq_class(1) : std::get<mpq_class>(random_base(k, rng, b).v);
    return Elem{QRat{p, {1}}};
  };
  auto as_elem = [&](const Elem& e) {
    if (k.is_finite()) {
      auto& r = std::get<FqRat>(e.v);
      return f.from_fq_rat(r.num, r.den);
    }
    auto& r = std::get<QRat>(e.v);
    return f.from_q_rat(r.num, r.den);
  };
  for (;;) {
    Elem num = as_elem(poly(deg(rng), false));
    if (f.is_zero(num)) continue;
    if (std::uniform_int_distribution<int>(0, 2)(rng) != 0) return num;
    return f.div(num, as_elem(poly(deg(rng), true)));
  }
}

Elem random_non_one(const Field& f, Rng& rng, const SampleBounds& b) {
  for (;;) {
    Elem a = random_nonzero(f, rng, b);
    if (!f.is_one(a)) return a;
  }
}

}  // namespace kmw
