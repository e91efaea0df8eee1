#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "etafano/errors.hpp"
#include "etafano/lattice.hpp"

namespace etafano {

// The class is outside the pseudoeffective cone (relative to the supplied
// curve list and polarization).
struct NotPseudoeffectiveError : ComputationError {
  using ComputationError::ComputationError;
};

// The Gram matrix of a candidate support is singular or indefinite, so no
// decomposition over that support exists. With a sound curve list this
// signals a class outside the pseudoeffective cone; with an unsound one,
// bad curve input.
struct SingularSupportError : ComputationError {
  using ComputationError::ComputationError;
};

struct ZariskiResult {
  DivisorClass positive;
  // (curve index, multiplicity), multiplicities > 0, indices ascending.
  std::vector<std::pair<std::size_t, Rat>> negative;

  DivisorClass negative_part(const SurfaceData& s) const;
};

// Zariski decomposition a = P + N relative to the surface's negative-curve
// list: P pairs non-negatively with every listed curve and is orthogonal to
// each support curve of N; N is effective with negative-definite support
// Gram. Grows the support iteratively from curves the current positive part
// still meets negatively. Throws NotPseudoeffectiveError or
// SingularSupportError as appropriate.
ZariskiResult zariski_decompose(const SurfaceData& s, const DivisorClass& a);

// vol(a) = P·P for pseudoeffective a, else 0. A singular support system is
// also mapped to 0: for sound curve lists it only arises beyond the
// pseudoeffective threshold.
Rat volume_of(const SurfaceData& s, const DivisorClass& a);

}  // namespace etafano
