#include "kslab/exponents.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "kslab/error.hpp"
#include "kslab/rational.hpp"

namespace kslab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Rational evaluation of the definition block; nullopt if any input is not a
// small-denominator ratio or an intermediate overflows.
std::optional<ExponentSet> exact_exponents(const InterpParams& in) {
  const auto R = [](double x) { return Rational::from_double(x); };
  const Rational one = Rational::integer(1);
  const Rational n = Rational::integer(in.N);
  auto r = R(in.r);
  auto q = R(in.q);
  if (!r || !q) return std::nullopt;

  std::optional<Rational> p, q0;
  if (*r < *q) {
    auto ratio = div(*q, *r);
    if (!ratio) return std::nullopt;
    auto diff = sub(*ratio, one);
    if (!diff) return std::nullopt;
    p = mul(n, *diff);
    q0 = q;
  } else {
    if (!in.theta) return std::nullopt;
    p = R(*in.theta);
    if (!p) return std::nullopt;
    auto frac = div(*p, n);
    if (!frac) return std::nullopt;
    auto s = add(one, *frac);
    if (!s) return std::nullopt;
    q0 = mul(*r, *s);
  }
  if (!p || !q0) return std::nullopt;

  // a = (N/p - N/q) / (1 - N/r + N/p)
  auto np = div(n, *p);
  auto nq = div(n, *q);
  auto nr = div(n, *r);
  if (!np || !nq || !nr) return std::nullopt;
  auto a_num = sub(*np, *nq);
  auto a_den0 = sub(one, *nr);
  if (!a_num || !a_den0) return std::nullopt;
  auto a_den = add(*a_den0, *np);
  if (!a_den) return std::nullopt;
  auto a = div(*a_num, *a_den);

  // b = (1/p - 1/q) / (1/p - 1/q0)
  auto ip = div(one, *p);
  auto iq = div(one, *q);
  auto iq0 = div(one, *q0);
  if (!ip || !iq || !iq0) return std::nullopt;
  auto b_num = sub(*ip, *iq);
  auto b_den = sub(*ip, *iq0);
  if (!b_num || !b_den) return std::nullopt;
  auto b = div(*b_num, *b_den);
  if (!a || !b) return std::nullopt;

  // rhs_exp1 = (1 - N/r + (N+r)/q0) b + (1 - b)
  auto npr = add(n, *r);
  if (!npr) return std::nullopt;
  auto t = div(*npr, *q0);
  if (!t) return std::nullopt;
  auto base = add(*a_den0, *t);
  if (!base) return std::nullopt;
  auto first = mul(*base, *b);
  auto omb = sub(one, *b);
  if (!first || !omb) return std::nullopt;
  auto rhs = add(*first, *omb);

  // s = N r / (N + r)
  auto nr_prod = mul(n, *r);
  if (!rhs || !nr_prod) return std::nullopt;
  auto s = div(*nr_prod, *npr);
  if (!s) return std::nullopt;

  ExponentSet e;
  e.p = p->to_double();
  e.q0 = q0->to_double();
  e.a = a->to_double();
  e.b = b->to_double();
  e.rhs_exp1 = rhs->to_double();
  e.sobolev_s = s->to_double();
  e.exact = true;
  return e;
}

ExponentSet float_exponents(const InterpParams& in) {
  const double N = in.N;
  ExponentSet e;
  if (in.q > in.r) {
    e.p = N * (in.q / in.r - 1.0);
    e.q0 = in.q;
  } else {
    e.p = *in.theta;
    e.q0 = in.r * (1.0 + e.p / N);
  }
  e.a = (N / e.p - N / in.q) / (1.0 - N / in.r + N / e.p);
  e.b = (1.0 / e.p - 1.0 / in.q) / (1.0 / e.p - 1.0 / e.q0);
  if (in.q > in.r) e.b = 1.0;
  e.rhs_exp1 = (1.0 - N / in.r + (N + in.r) / e.q0) * e.b + (1.0 - e.b);
  e.sobolev_s = N * in.r / (N + in.r);
  e.exact = false;
  return e;
}

}  // namespace

double critical_q(int N, double r) {
  if (r >= N) return std::numeric_limits<double>::infinity();
  return N * r / (N - r);
}

Admissibility validate_admissible(const InterpParams& params) {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (params.N < 1) return {"N must be an integer >= 1"};
  if (!finite(params.r) || !finite(params.q)) return {"r and q must be finite"};
  if (params.r < 1.0) return {"r must satisfy r >= 1"};
  if (!(params.q > 0.0)) return {"q must satisfy q > 0"};
  const double qc = critical_q(params.N, params.r);
  if (std::isfinite(qc) && !(params.q < qc)) {
    return {"q must be < Nr/(N-r)=" + fmt(qc) + ", strict"};
  }
  if (params.q <= params.r) {
    if (!params.theta) return {"theta is required when q <= r"};
    const double th = *params.theta;
    if (!finite(th)) return {"theta must be finite"};
    if (!(th > 0.0)) return {"theta must satisfy theta > 0"};
    if (!(th < params.q)) return {"theta must satisfy theta < q"};
  }
  return {};
}

ExponentSet compute_exponents(const InterpParams& params) {
  if (auto v = validate_admissible(params); !v) throw InvalidInput(v.violation);
  if (auto e = exact_exponents(params)) return *e;
  return float_exponents(params);
}

double gn_exponent(int N, double p, double q, double r) {
  if (N < 1 || !(p > 0.0) || !(q > 0.0) || r < 1.0) {
    throw InvalidInput("gn_exponent: need N >= 1, p > 0, q > 0, r >= 1");
  }
  const double a = (N / p - N / q) / (1.0 - N / r + N / p);
  if (!(a > 0.0 && a < 1.0)) {
    throw InvalidInput("gn_exponent: a=" + fmt(a) + " not in (0,1)");
  }
  return a;
}

std::string to_key_value(const ExponentSet& e) {
  std::ostringstream os;
  os << "p=" << fmt(e.p) << '\n'
     << "q0=" << fmt(e.q0) << '\n'
     << "a=" << fmt(e.a) << '\n'
     << "b=" << fmt(e.b) << '\n'
     << "rhs_exp1=" << fmt(e.rhs_exp1) << '\n'
     << "sobolev_s=" << fmt(e.sobolev_s) << '\n'
     << "exact=" << (e.exact ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace kslab
