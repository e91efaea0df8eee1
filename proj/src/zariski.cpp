#include "etafano/zariski.hpp"

#include <set>
#include <string>

#include "etafano/errors.hpp"

namespace etafano {

namespace {

std::string support_str(const SurfaceData& s, const std::set<std::size_t>& supp) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : supp) {
    if (!first) out += ", ";
    first = false;
    out += s.curve_labels.empty() ? std::to_string(i) : s.curve_labels[i];
  }
  return out + "}";
}

}  // namespace

DivisorClass ZariskiResult::negative_part(const SurfaceData& s) const {
  DivisorClass n{std::vector<Rat>(s.lattice.rank(), Rat(0))};
  for (const auto& [idx, mult] : negative) n += mult * s.negative_curves[idx];
  return n;
}

ZariskiResult zariski_decompose(const SurfaceData& s, const DivisorClass& a) {
  const std::size_t m = s.negative_curves.size();
  std::set<std::size_t> supp;

  // Seed with the curves the class itself meets negatively, then iterate:
  // solve for the unique N supported there with (a - N) orthogonal to the
  // support, and absorb any curve the remainder still meets negatively.
  // The support only grows, so at most m+1 rounds.
  for (std::size_t i = 0; i < m; ++i) {
    if (s.pair(a, s.negative_curves[i]) < 0) supp.insert(i);
  }

  std::vector<Rat> mult;
  DivisorClass p = a;
  for (std::size_t round = 0; round <= m + 1; ++round) {
    std::vector<std::size_t> idx(supp.begin(), supp.end());
    Mat gram(idx.size(), std::vector<Rat>(idx.size()));
    std::vector<Rat> rhs(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        gram[i][j] = s.pair(s.negative_curves[idx[i]], s.negative_curves[idx[j]]);
      }
      rhs[i] = s.pair(a, s.negative_curves[idx[i]]);
    }

    auto sol = solve_linear(gram, rhs);
    if (!sol) {
      throw SingularSupportError("singular support system on " + support_str(s, supp));
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (sol->at(i) < 0) {
        throw NotPseudoeffectiveError("class " + a.str() +
                                      " is not pseudoeffective (negative multiplicity on " +
                                      (s.curve_labels.empty() ? std::to_string(idx[i])
                                                              : s.curve_labels[idx[i]]) +
                                      ")");
      }
    }

    p = a;
    for (std::size_t i = 0; i < idx.size(); ++i) p -= sol->at(i) * s.negative_curves[idx[i]];

    bool grew = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (supp.count(i)) continue;
      if (s.pair(p, s.negative_curves[i]) < 0) {
        supp.insert(i);
        grew = true;
      }
    }
    if (!grew) {
      mult = *sol;
      break;
    }
    if (round == m + 1) throw ComputationError("zariski support iteration failed to stabilize");
  }

  // Pseudoeffectivity certificate: P is nef against the list; with the
  // anti-canonical class ample (validated upstream), P·P >= 0 and
  // P·(-K) >= 0 pin P to the pseudoeffective half of the quadric cone, and
  // then a = P + N is pseudoeffective too. Either failing condemns a.
  if (s.pair(p, p) < 0 || s.pair(p, s.anti_canonical()) < 0) {
    throw NotPseudoeffectiveError("class " + a.str() + " is not pseudoeffective");
  }

  ZariskiResult out;
  out.positive = p;
  std::vector<std::size_t> idx(supp.begin(), supp.end());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (mult[i] == 0) continue;  // grazing curve, contributes nothing
    out.negative.emplace_back(idx[i], mult[i]);
  }
  Mat final_gram(out.negative.size(), std::vector<Rat>(out.negative.size()));
  for (std::size_t i = 0; i < out.negative.size(); ++i) {
    for (std::size_t j = 0; j < out.negative.size(); ++j) {
      final_gram[i][j] =
          s.pair(s.negative_curves[out.negative[i].first], s.negative_curves[out.negative[j].first]);
    }
  }
  if (!is_negative_definite(final_gram)) {
    throw SingularSupportError("support Gram of " + support_str(s, supp) +
                               " is not negative definite");
  }
  return out;
}

Rat volume_of(const SurfaceData& s, const DivisorClass& a) {
  try {
    ZariskiResult z = zariski_decompose(s, a);
    return s.pair(z.positive, z.positive);
  } catch (const NotPseudoeffectiveError&) {
    return Rat(0);
  } catch (const SingularSupportError&) {
    // For sound curve lists this only fires past the pseudoeffective
    // threshold, where the volume vanishes.
    return Rat(0);
  }
}

}  // namespace etafano
