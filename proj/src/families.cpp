#include "braidforce/homology.hpp"

#include <algorithm>

namespace braidforce {

TopologicalFamily topological_family(const Braid& seed, const Braid& skeleton, int extension_cap) {
  auto grid = std::make_shared<const SkeletonGrid>(skeleton);
  const BraidClassComplex ref = enumerate_class(seed, grid);
  TopologicalFamily fam;
  fam.members.push_back(ref);
  fam.seeds.push_back(seed);

  std::vector<BraidClassComplex> others;
  for (auto& c : classes_with_signature(grid, ref.signature)) {
    if (c.boxes == ref.boxes) continue;
    // bounded proper topological classes contain only bounded proper discrete classes
    if (ref.bounded && ref.proper && !(c.bounded && c.proper)) continue;
    others.push_back(std::move(c));
  }
  if (others.empty()) return fam;

  // carry every candidate along the same extended skeleton
  const int bound = word_metric(stack(seed, skeleton));
  std::vector<Braid> free{seed};
  for (const auto& c : others) free.push_back(grid->midpoint_strand(c.boxes.front()));
  std::vector<bool> merged(others.size(), false);
  Braid v = skeleton;
  int level = 0;
  while (v.d() <= bound && level < extension_cap) {
    Braid all = free[0];
    for (std::size_t k = 1; k < free.size(); ++k) all = stack(all, free[k]);
    const Braid vn = nudge_seam(v, &all);
    for (auto& u : free) u = extend(nudge_seam(u, &vn));
    v = extend(vn);
    ++level;
    auto g = std::make_shared<const SkeletonGrid>(v);
    const BraidClassComplex cls = enumerate_class(free[0], g);
    bool pending = false;
    for (std::size_t k = 0; k < others.size(); ++k) {
      if (!merged[k] && cls.contains(g->box_of(free[k + 1]))) {
        merged[k] = true;
        fam.extensions_used = level;
      }
      pending = pending || !merged[k];
    }
    if (!pending) break;
  }
  for (std::size_t k = 0; k < others.size(); ++k) {
    if (merged[k]) {
      fam.members.push_back(others[k]);
      fam.seeds.push_back(grid->midpoint_strand(others[k].boxes.front()));
    } else if (v.d() <= bound) {
      fam.undecided.push_back(others[k]);
      if (!(others[k].bounded && others[k].proper) || !conley_index(others[k]).empty()) fam.certified = false;
    }
  }
  return fam;
}

ConleyIndex topological_index(const Braid& seed, const Braid& skeleton, int extension_cap) {
  return wedge_index(topological_family(seed, skeleton, extension_cap).members);
}

namespace {

bool mirrored(const ConleyIndex& a, const ConleyIndex& b, int top) {
  for (int k = 0; k <= top; ++k) {
    const long long x = k < static_cast<int>(a.betti.size()) ? a.betti[k] : 0;
    const int j = top - k;
    const long long y = j < static_cast<int>(b.betti.size()) ? b.betti[j] : 0;
    if (x != y) return false;
  }
  return a.betti.size() <= static_cast<std::size_t>(top + 1) && b.betti.size() <= static_cast<std::size_t>(top + 1);
}

} // namespace

DualityReport verify_duality(const Braid& seed, const Braid& skeleton) {
  DualityReport r;
  r.original = conley_index(enumerate_class(seed, skeleton));
  r.dual = conley_index(enumerate_class(dualize(seed), dualize(skeleton)));
  r.holds = mirrored(r.original, r.dual, skeleton.d());
  return r;
}

StabilizationReport verify_stabilization(const Braid& seed, const Braid& skeleton, int steps) {
  StabilizationReport r;
  Braid u = seed, v = skeleton;
  r.indices.push_back(topological_index(u, v));
  for (int s = 0; s < steps; ++s) {
    std::tie(u, v) = extend_relative(u, v);
    r.indices.push_back(topological_index(u, v));
  }
  r.holds = std::all_of(r.indices.begin(), r.indices.end(),
                        [&](const ConleyIndex& h) { return h.betti == r.indices.front().betti; });
  return r;
}

ShiftReport shift_check(const Braid& seed, const Braid& skeleton, int times) {
  ShiftReport r;
  r.dual = topological_index(dualize(seed), dualize(skeleton));
  Braid u = seed, v = skeleton;
  for (int s = 0; s < 2 * times; ++s) std::tie(u, v) = extend_relative(u, v);
  r.dual_extended = topological_index(dualize(u), dualize(v));
  std::vector<long long> shifted(2 * times, 0);
  shifted.insert(shifted.end(), r.dual.betti.begin(), r.dual.betti.end());
  r.holds = make_index(shifted).betti == r.dual_extended.betti;
  return r;
}

} // namespace braidforce
