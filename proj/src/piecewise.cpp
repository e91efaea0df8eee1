#include "etafano/piecewise.hpp"

#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

PiecewisePoly::PiecewisePoly(std::vector<AlgReal> breakpoints, std::vector<Poly> pieces,
                             bool extend_zero)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), extend_zero_(extend_zero) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size()) {
    throw ValidationError("piecewise data needs k pieces and k+1 breakpoints, k >= 1");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw ValidationError("piecewise breakpoints must increase strictly");
    }
  }
}

std::size_t PiecewisePoly::piece_index(const AlgReal& x) const {
  if (x < breaks_.front()) throw ComputationError("piecewise argument below the domain");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (x <= breaks_[i + 1]) return i;
  }
  throw ComputationError("piecewise argument above the domain");
}

Rat PiecewisePoly::eval(const Rat& x) const {
  AlgReal p(x);
  if (extend_zero_ && domain_hi() < p) return Rat(0);
  return pieces_[piece_index(p)].eval(x);
}

bool PiecewisePoly::is_continuous() const {
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    AlgReal left = eval_at(pieces_[i - 1], breaks_[i]);
    AlgReal right = eval_at(pieces_[i], breaks_[i]);
    if (!(left == right)) return false;
  }
  return true;
}

AlgReal poly_integral_alg(const Poly& p, const AlgReal& a, const AlgReal& b) {
  Poly w = p.antiderivative();
  return alg_sub(eval_at(w, b), eval_at(w, a));
}

AlgReal piecewise_integral(const PiecewisePoly& f, const AlgReal& a, const AlgReal& b) {
  if (b < a) throw ComputationError("piecewise integral bounds are reversed");
  if (a < f.domain_lo()) throw ComputationError("piecewise integral starts below the domain");

  AlgReal top = b;
  if (f.domain_hi() < b) {
    if (!f.extends_zero()) throw ComputationError("piecewise integral ends above the domain");
    top = f.domain_hi();  // the tail is identically zero
  }
  if (!(a < top)) return AlgReal(Rat(0));

  std::size_t ia = f.piece_index(a);
  std::size_t ib = f.piece_index(top);
  if (ia == ib) return poly_integral_alg(f.piece(ia), a, top);

  AlgReal total = poly_integral_alg(f.piece(ia), a, f.breakpoints()[ia + 1]);
  for (std::size_t i = ia + 1; i < ib; ++i) {
    total = alg_add(total, poly_integral_alg(f.piece(i), f.breakpoints()[i], f.breakpoints()[i + 1]));
  }
  total = alg_add(total, poly_integral_alg(f.piece(ib), f.breakpoints()[ib], top));
  return total;
}

}  // namespace etafano
