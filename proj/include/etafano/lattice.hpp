#pragma once

#include <string>
#include <vector>

#include "etafano/linalg.hpp"
#include "etafano/rational.hpp"

namespace etafano {

// A divisor class written in a fixed basis of the surface's numerical group.
struct DivisorClass {
  std::vector<Rat> coeffs;

  bool is_zero() const;
  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rat& s, DivisorClass d);
  bool operator==(const DivisorClass& o) const { return coeffs == o.coeffs; }
  std::string str() const;
};

// Numerical intersection data of a projective surface: basis labels and the
// symmetric Gram matrix of pairwise products.
struct IntersectionLattice {
  std::vector<std::string> basis_labels;
  Mat gram;

  std::size_t rank() const { return gram.size(); }
  // Shape and symmetry checks; throws ValidationError with the offending
  // entry named.
  void validate() const;
};

Rat intersect(const IntersectionLattice& lat, const DivisorClass& a, const DivisorClass& b);

// A polarized surface pair: intersection lattice, canonical class, reduced
// boundary divisor, and the (finite) list of irreducible curves of negative
// self-intersection that Zariski supports may draw from.
struct SurfaceData {
  IntersectionLattice lattice;
  DivisorClass canonical;
  DivisorClass boundary;
  std::vector<DivisorClass> negative_curves;
  std::vector<std::string> curve_labels;  // parallel to negative_curves

  DivisorClass anti_canonical() const;
  Rat pair(const DivisorClass& a, const DivisorClass& b) const { return intersect(lattice, a, b); }
  // Structural checks (sizes, curve negativity, labels). Throws
  // ValidationError.
  void validate() const;
};

// True when d pairs non-negatively with every listed negative curve. This is
// nefness relative to the supplied list; it is honest nefness whenever the
// list contains all irreducible classes that could pair negatively.
bool is_nef_against(const SurfaceData& s, const DivisorClass& d);

}  // namespace etafano
