#include "etafano/lattice.hpp"

#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

bool DivisorClass::is_zero() const {
  for (const Rat& c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (coeffs.size() != o.coeffs.size()) throw ComputationError("divisor class rank mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (coeffs.size() != o.coeffs.size()) throw ComputationError("divisor class rank mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

DivisorClass operator*(const Rat& s, DivisorClass d) {
  for (Rat& c : d.coeffs) c *= s;
  return d;
}

std::string DivisorClass::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ", ";
    out += rat_str(coeffs[i]);
  }
  return out + "]";
}

void IntersectionLattice::validate() const {
  std::size_t n = gram.size();
  if (n == 0) throw ValidationError("lattice: empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram[i].size() != n) {
      throw ValidationError("lattice: gram row " + std::to_string(i) + " has " +
                            std::to_string(gram[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram[i][j] != gram[j][i]) {
        throw ValidationError("lattice: gram[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] != gram[" + std::to_string(j) + "][" + std::to_string(i) + "]");
      }
    }
  }
  if (!basis_labels.empty() && basis_labels.size() != n) {
    throw ValidationError("lattice: " + std::to_string(basis_labels.size()) +
                          " basis labels for rank " + std::to_string(n));
  }
}

Rat intersect(const IntersectionLattice& lat, const DivisorClass& a, const DivisorClass& b) {
  std::size_t n = lat.rank();
  if (a.coeffs.size() != n || b.coeffs.size() != n) {
    throw ComputationError("intersection with classes of wrong rank");
  }
  Rat acc(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) acc += a.coeffs[i] * lat.gram[i][j] * b.coeffs[j];
  }
  return acc;
}

DivisorClass SurfaceData::anti_canonical() const {
  return Rat(-1) * canonical;
}

void SurfaceData::validate() const {
  lattice.validate();
  std::size_t n = lattice.rank();
  if (canonical.coeffs.size() != n) throw ValidationError("surface: canonical class rank mismatch");
  if (boundary.coeffs.size() != n) throw ValidationError("surface: boundary class rank mismatch");
  if (!curve_labels.empty() && curve_labels.size() != negative_curves.size()) {
    throw ValidationError("surface: curve label count differs from curve count");
  }
  for (std::size_t i = 0; i < negative_curves.size(); ++i) {
    const DivisorClass& c = negative_curves[i];
    std::string name = i < curve_labels.size() ? curve_labels[i] : std::to_string(i);
    if (c.coeffs.size() != n) {
      throw ValidationError("surface: negative curve " + name + " rank mismatch");
    }
    if (!(intersect(lattice, c, c) < 0)) {
      throw ValidationError("surface: curve " + name + " = " + c.str() +
                            " has non-negative self-intersection " +
                            rat_str(intersect(lattice, c, c)));
    }
  }
}

bool is_nef_against(const SurfaceData& s, const DivisorClass& d) {
  for (const DivisorClass& c : s.negative_curves) {
    if (s.pair(d, c) < 0) return false;
  }
  return true;
}

}  // namespace etafano
