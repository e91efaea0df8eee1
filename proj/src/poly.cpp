#include "etafano/poly.hpp"

#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::variable() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

Rat Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(i)];
}

const Rat& Poly::leading() const {
  if (c_.empty()) throw ComputationError("leading coefficient of the zero polynomial");
  return c_.back();
}

Rat Poly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
  if (c_.empty()) return Poly();
  std::vector<Rat> a(c_.size() + 1);
  a[0] = Rat(0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Rat(static_cast<long>(i + 1));
  return Poly(std::move(a));
}

Poly Poly::compose_affine(const Rat& c0, const Rat& c1) const {
  // Horner in the affine argument: acc = acc*(c0 + c1 x) + coefficient.
  Poly arg(std::vector<Rat>{c0, c1});
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * arg;
    acc += Poly::constant(*it);
  }
  return acc;
}

Poly Poly::monic() const {
  if (c_.empty()) return Poly();
  Rat inv = Rat(1) / c_.back();
  return inv * *this;
}

Poly Poly::operator-() const { return Rat(-1) * *this; }

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(out));
}

Poly operator*(const Rat& s, Poly p) {
  for (auto& c : p.c_) c *= s;
  p.trim();
  return p;
}

void Poly::divmod(const Poly& n, const Poly& d, Poly& q, Poly& r) {
  if (d.is_zero()) throw ComputationError("polynomial division by zero");
  std::vector<Rat> rem = n.c_;
  std::vector<Rat> quot;
  int dd = d.degree();
  const Rat& lead = d.c_.back();
  if (static_cast<int>(rem.size()) - 1 >= dd) {
    quot.assign(rem.size() - static_cast<std::size_t>(dd), Rat(0));
  }
  while (static_cast<int>(rem.size()) - 1 >= dd && !rem.empty()) {
    int rd = static_cast<int>(rem.size()) - 1;
    Rat f = rem.back() / lead;
    quot[static_cast<std::size_t>(rd - dd)] = f;
    for (int i = 0; i <= dd; ++i) {
      rem[static_cast<std::size_t>(rd - dd + i)] -= f * d.c_[static_cast<std::size_t>(i)];
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  q = Poly(std::move(quot));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();  // normalize every step to keep coefficients tame
  }
  return a.monic();
}

Poly Poly::squarefree_part() const {
  if (degree() <= 0) return *this;
  Poly g = gcd(*this, derivative());
  if (g.degree() <= 0) return *this;
  Poly q, r;
  divmod(*this, g, q, r);
  // r is zero by construction; q carries this polynomial's leading scale
  // divided by g's (monic), so the caller's normalization survives.
  return q;
}

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    bool unit = (a == 1);
    if (i == 0 || !unit) out += rat_str(a);
    if (i > 0) {
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Rat poly_integral(const Poly& p, const Rat& a, const Rat& b) {
  Poly w = p.antiderivative();
  return w.eval(b) - w.eval(a);
}

Rat cauchy_root_bound(const Poly& p) {
  if (p.degree() <= 0) return Rat(1);
  Rat m(0);
  const Rat lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rat v = abs(p.coeff(i)) / lead;
    if (v > m) m = v;
  }
  return m + 1;
}

}  // namespace etafano
