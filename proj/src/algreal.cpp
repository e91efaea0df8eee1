#include "etafano/algreal.hpp"

#include <algorithm>
#include <cassert>

#include "etafano/errors.hpp"

namespace etafano {

namespace {

// Sturm sequence of a squarefree polynomial: p, p', then negated remainders
// down to a nonzero constant.
std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  Poly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const Poly& a = chain[chain.size() - 2];
    const Poly& b = chain.back();
    Poly q, r;
    Poly::divmod(a, b, q, r);
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int count = 0;
  int prev = 0;
  for (const Poly& p : chain) {
    int s = rat_sign(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Number of roots in (a, b], assuming the chain's head does not vanish at a.
int roots_in(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

// Divides p by (x - r); the remainder must vanish.
Poly deflate(const Poly& p, const Rat& r) {
  Poly q, rem;
  Poly::divmod(p, Poly(std::vector<Rat>{-r, Rat(1)}), q, rem);
  assert(rem.is_zero());
  return q;
}

// Exact square root of a nonnegative rational, when one exists.
bool rat_square_root(const Rat& x, Rat& out) {
  if (rat_sign(x) < 0) return false;
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  out = Rat(rn) / Rat(rd);
  return true;
}

// Splits the rational roots of work inside [lo, hi] off into out, deflating
// each one. Complete for degrees 1 and 2 (linear solve, perfect-square
// discriminant), which covers every place the engine must certify
// rationality; a rational root of a higher-degree factor merely keeps its
// root-of-polynomial form, and still compares exactly.
void split_rational_roots(Poly& work, const Rat& lo, const Rat& hi, std::vector<Rat>& out) {
  if (work.degree() == 1) {
    Rat r = -work.coeff(0) / work.coeff(1);
    if (lo <= r && r <= hi) out.push_back(r);
    work = Poly(std::vector<Rat>{Rat(1)});
    return;
  }
  if (work.degree() != 2) return;
  const Rat a = work.coeff(2);
  const Rat b = work.coeff(1);
  Rat s;
  if (!rat_square_root(b * b - 4 * a * work.coeff(0), s)) return;
  const Rat r1 = (-b - s) / (2 * a);
  const Rat r2 = (-b + s) / (2 * a);
  for (const Rat& r : {r1, r2}) {
    if (lo <= r && r <= hi) out.push_back(r);
  }
  work = Poly(std::vector<Rat>{Rat(1)});
}

}  // namespace

const Rat& AlgReal::rational() const {
  if (!rational_) throw ComputationError("algebraic value is not rational");
  return value_;
}

Poly AlgReal::defining_poly() const {
  if (rational_) return Poly(std::vector<Rat>{-value_, Rat(1)});
  return poly_;
}

std::pair<Rat, Rat> AlgReal::interval() const {
  if (rational_) return {value_, value_};
  return {lo_, hi_};
}

void AlgReal::refine_once() {
  Rat m = (lo_ + hi_) / 2;
  Rat pm = poly_.eval(m);
  if (pm == 0) {
    rational_ = true;
    value_ = m;
    poly_ = Poly();
    return;
  }
  if (rat_sign(poly_.eval(lo_)) * rat_sign(pm) < 0) {
    hi_ = m;
  } else {
    lo_ = m;
  }
}

Sign AlgReal::sign() const { return sign_of_int(compare(Rat(0))); }

int AlgReal::compare(const Rat& c) const {
  if (rational_) return rat_sign(value_ - c);
  if (lo_ < c && c < hi_ && poly_.eval(c) == 0) return 0;
  AlgReal t = *this;
  while (!t.rational_ && t.lo_ < c && c < t.hi_) t.refine_once();
  if (t.rational_) return rat_sign(t.value_ - c);
  return (c <= t.lo_) ? 1 : -1;
}

int AlgReal::compare(const AlgReal& o) const {
  if (o.rational_) return compare(o.value_);
  if (rational_) return -o.compare(value_);

  // Equality first: a shared value would be a root of the gcd inside the
  // interval overlap, and refinement alone would never separate it.
  Poly g = Poly::gcd(poly_, o.poly_);
  if (g.degree() >= 1) {
    Rat l = std::max(lo_, o.lo_);
    Rat h = std::min(hi_, o.hi_);
    if (l < h) {
      if (g.eval(l) == 0) g = deflate(g, l);
      if (g.degree() >= 1 && g.eval(h) == 0) g = deflate(g, h);
      if (g.degree() >= 1 && roots_in(sturm_chain(g), l, h) >= 1) {
        // That root lies in both isolating intervals, so it is both values.
        return 0;
      }
    }
  }

  AlgReal a = *this;
  AlgReal b = o;
  while (true) {
    if (a.rational_) return -b.compare(a.value_);
    if (b.rational_) return a.compare(b.value_);
    if (a.hi_ <= b.lo_) return -1;
    if (b.hi_ <= a.lo_) return 1;
    a.refine_once();
    b.refine_once();
  }
}

AlgReal AlgReal::affine(const Rat& c0, const Rat& c1) const {
  if (rational_) return AlgReal(c0 + c1 * value_);
  if (c1 == 0) return AlgReal(c0);
  // y = c0 + c1 x maps the defining polynomial to p((y - c0) / c1) and the
  // isolating interval to its image, reversed when c1 < 0.
  Poly q = poly_.compose_affine(-c0 / c1, Rat(1) / c1);
  Rat a = c0 + c1 * lo_;
  Rat b = c0 + c1 * hi_;
  if (c1 < 0) std::swap(a, b);
  return AlgReal(std::move(q), std::move(a), std::move(b));
}

AlgReal AlgReal::refined(const Rat& max_width) const {
  AlgReal t = *this;
  while (!t.rational_ && t.hi_ - t.lo_ > max_width) t.refine_once();
  return t;
}

double AlgReal::approx() const {
  if (rational_) return rat_double(value_);
  AlgReal t = refined(Rat(1, 1000000) / 1000000);
  if (t.rational_) return rat_double(t.value_);
  return rat_double((t.lo_ + t.hi_) / 2);
}

std::string AlgReal::decimal_hint(int digits) const {
  Rat scale = rat_pow(Rat(10), static_cast<unsigned>(digits));
  Rat v;
  if (rational_) {
    v = value_;
  } else {
    AlgReal t = refined(Rat(1) / (scale * 100));
    auto iv = t.interval();
    v = (iv.first + iv.second) / 2;
  }
  Int scaled = rat_floor(v * scale + Rat(1, 2));
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  Int ip = scaled / rat_floor(scale);
  Int fp = scaled % rat_floor(scale);
  std::string frac = fp.get_str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

std::string AlgReal::str() const {
  if (rational_) return rat_str(value_);
  return "root of " + poly_.str() + " in (" + rat_str(lo_) + ", " + rat_str(hi_) + ") ~ " +
         decimal_hint();
}

AlgReal AlgReal::root_of(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.is_zero()) throw ComputationError("algebraic_root of the zero polynomial");
  if (lo > hi) throw ComputationError("algebraic_root interval is empty");
  std::vector<AlgReal> roots = isolate_roots(p, lo, hi);
  if (roots.empty()) {
    throw ComputationError("no root of " + p.str() + " in [" + rat_str(lo) + ", " + rat_str(hi) + "]");
  }
  if (roots.size() > 1) {
    throw ComputationError("interval [" + rat_str(lo) + ", " + rat_str(hi) + "] holds " +
                           std::to_string(roots.size()) + " roots of " + p.str());
  }
  return roots.front();
}

std::vector<AlgReal> isolate_roots(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.is_zero()) throw ComputationError("root isolation on the zero polynomial");
  if (lo > hi) throw ComputationError("root isolation on an empty interval");

  Poly work = p.squarefree_part();
  std::vector<Rat> rational_roots;
  if (work.eval(lo) == 0) {
    rational_roots.push_back(lo);
    work = deflate(work, lo);
  }
  if (hi != lo && !work.is_zero() && work.eval(hi) == 0) {
    rational_roots.push_back(hi);
    work = deflate(work, hi);
  }

  std::vector<std::pair<Rat, Rat>> isolated;
  if (lo != hi) {
    // Bisection on Sturm counts. A midpoint that happens to be a root is
    // peeled off and the sweep restarts against the deflated polynomial;
    // each restart lowers the degree, so this terminates.
    bool restart = true;
    while (restart && work.degree() >= 1) {
      restart = false;
      split_rational_roots(work, lo, hi, rational_roots);
      if (work.degree() < 1) break;
      isolated.clear();
      std::vector<Poly> chain = sturm_chain(work);
      std::vector<std::pair<Rat, Rat>> stack{{lo, hi}};
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = roots_in(chain, a, b);
        if (n == 0) continue;
        if (n == 1) {
          isolated.emplace_back(a, b);
          continue;
        }
        Rat m = (a + b) / 2;
        if (work.eval(m) == 0) {
          rational_roots.push_back(m);
          work = deflate(work, m);
          restart = true;
          break;
        }
        stack.emplace_back(a, m);
        stack.emplace_back(m, b);
      }
    }
  }

  std::vector<AlgReal> out;
  out.reserve(rational_roots.size() + isolated.size());
  for (const Rat& r : rational_roots) out.emplace_back(r);
  for (const auto& [a, b] : isolated) {
    if (work.degree() == 1) {
      out.emplace_back(-work.coeff(0) / work.coeff(1));
    } else {
      out.push_back(AlgReal(work, a, b));
    }
  }
  std::sort(out.begin(), out.end(), [](const AlgReal& x, const AlgReal& y) { return x < y; });
  return out;
}

std::vector<AlgReal> isolate_roots(const Poly& p) {
  if (p.is_zero()) throw ComputationError("root isolation on the zero polynomial");
  if (p.degree() == 0) return {};
  Rat b = cauchy_root_bound(p);
  return isolate_roots(p, -b, b);
}

AlgReal eval_at(const Poly& p, const AlgReal& x) {
  if (x.is_rational()) return AlgReal(p.eval(x.rational()));
  Poly q, r;
  Poly::divmod(p, x.defining_poly(), q, r);
  if (r.degree() <= 0) return AlgReal(r.coeff(0));
  if (r.degree() == 1) return x.affine(r.coeff(0), r.coeff(1));
  throw ComputationError("evaluation needs arithmetic beyond degree-1 residues: " + r.str());
}

AlgReal alg_add(const AlgReal& a, const AlgReal& b) {
  if (b.is_rational()) return a.affine(b.rational(), Rat(1));
  if (a.is_rational()) return b.affine(a.rational(), Rat(1));
  throw ComputationError("sum of two independent algebraic numbers is unsupported");
}

AlgReal alg_sub(const AlgReal& a, const AlgReal& b) {
  if (b.is_rational()) return a.affine(-b.rational(), Rat(1));
  if (a.is_rational()) return b.affine(a.rational(), Rat(-1));
  throw ComputationError("difference of two independent algebraic numbers is unsupported");
}

Rat rational_between(const AlgReal& a, const AlgReal& b) {
  if (a.is_rational() && b.is_rational()) {
    if (!(a.rational() < b.rational())) throw ComputationError("rational_between needs a < b");
    return (a.rational() + b.rational()) / 2;
  }
  if (a.is_rational()) {
    AlgReal t = b;
    while (!t.is_rational() && t.interval().first <= a.rational()) {
      t = t.refined((t.interval().second - t.interval().first) / 2);
    }
    if (t.is_rational()) return rational_between(a, t);
    return (a.rational() + t.interval().first) / 2;
  }
  if (b.is_rational()) {
    AlgReal t = a;
    while (!t.is_rational() && t.interval().second >= b.rational()) {
      t = t.refined((t.interval().second - t.interval().first) / 2);
    }
    if (t.is_rational()) return rational_between(t, b);
    return (t.interval().second + b.rational()) / 2;
  }
  AlgReal x = a, y = b;
  while (true) {
    if (x.is_rational()) return rational_between(x, y);
    if (y.is_rational()) return rational_between(x, y);
    if (x.interval().second <= y.interval().first) {
      return (x.interval().second + y.interval().first) / 2;
    }
    x = x.refined((x.interval().second - x.interval().first) / 2);
    y = y.refined((y.interval().second - y.interval().first) / 2);
  }
}

}  // namespace etafano
