#include "braidforce/corpus.hpp"
#include "braidforce/parallel.hpp"
#include "braidforce/skeletal.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>

using namespace braidforce;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && secs > limit) {
    o.pass = false;
    o.detail += " (over " + std::to_string(static_cast<int>(limit)) + " s)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-28s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string cp_of(const Braid& u, const Braid& v) { return format_cp(conley_index(enumerate_class(u, v)).cp); }

// c - cp = (1 + t) q with q >= 0
bool morse_relations(std::vector<long long> c, const std::vector<long long>& cp) {
  if (c.size() < cp.size()) c.resize(cp.size(), 0);
  for (std::size_t k = 0; k < cp.size(); ++k) c[k] -= cp[k];
  long long carry = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const long long q = c[k] - carry;
    if (q < 0) return false;
    carry = q;
  }
  return carry == 0;
}

// the corpus plus the bounded proper census classes at n = 3, 4
std::vector<CorpusEntry> full_corpus() {
  std::vector<CorpusEntry> all = corpus();
  for (int n = 3; n <= 4; ++n) {
    const Census c = example3(n);
    for (std::size_t k = 0; k < c.seeds.size(); ++k) {
      const BraidClassComplex cls = enumerate_class(c.seeds[k], c.skeleton);
      if (!cls.bounded || !cls.proper) continue;
      all.push_back({"census" + std::to_string(n) + "-" + std::to_string(k), c.seeds[k], c.skeleton,
                     format_cp(conley_index(cls).cp), false});
    }
  }
  return all;
}

} // namespace

int main() {
  const std::vector<CorpusEntry> everything = full_corpus();

  run(1, "example 1 index", 1, [] {
    const CorpusEntry e = example1();
    const std::string cp = cp_of(e.free, e.skeleton);
    return Outcome{cp == "t", "CP = " + cp};
  });

  run(2, "example 2 index", 5, [] {
    const CorpusEntry e = example2();
    const std::string cp = cp_of(e.free, e.skeleton);
    return Outcome{cp == "t^2 + t^3", "CP = " + cp};
  });

  run(3, "example 3 census", 60, [] {
    Outcome o{true, ""};
    for (int n = 2; n <= 4; ++n) {
      const Census c = example3(n);
      auto grid = std::make_shared<const SkeletonGrid>(c.skeleton);
      std::vector<int> deg(c.seeds.size(), -2);
      parallel_for(c.seeds.size(), [&](std::size_t k) {
        const BraidClassComplex cls = enumerate_class(c.seeds[k], grid);
        if (!cls.bounded || !cls.proper) return;
        const ConleyIndex h = conley_index(cls);
        int nonzero = 0, at = -1;
        for (std::size_t j = 0; j < h.cp.size(); ++j)
          if (h.cp[j]) {
            nonzero += 1;
            at = static_cast<int>(j);
          }
        deg[k] = (nonzero == 1 && h.cp[at] == 1 && !h.has_torsion()) ? at : -1;
      });
      int good = 0, monomial = 0;
      for (int k : deg) {
        if (k == -2) continue;
        ++good;
        if (k >= 0 && k <= n) ++monomial;
      }
      const int want = static_cast<int>(std::pow(3, n)) - 2;
      o.pass = o.pass && good == want && monomial == good;
      o.detail += "n=" + std::to_string(n) + ": " + std::to_string(good) + "/" + std::to_string(want) + " ";
    }
    return o;
  });

  run(4, "forcing cases", 120, [] {
    const std::string a = cp_of(comp_case(ForcingCase::I).free, comp_case(ForcingCase::I).skeleton);
    const std::string b = cp_of(comp_case(ForcingCase::II).free, comp_case(ForcingCase::II).skeleton);
    const std::string c = cp_of(comp_case(ForcingCase::III).free, comp_case(ForcingCase::III).skeleton);
    return Outcome{a == "t + t^2" && b == "t^4 + t^5" && c == "t + t^2", "I: " + a + ", II: " + b + ", III: " + c};
  });

  run(5, "duality", 0, [&] {
    int checked = 0, held = 0, skipped = 0;
    for (const auto& e : everything) {
      if (e.skeleton.d() % 2) {
        ++skipped;
        continue;
      }
      ++checked;
      held += verify_duality(e.free, e.skeleton).holds;
    }
    return Outcome{checked > 0 && held == checked, std::to_string(held) + "/" + std::to_string(checked) +
                                                       " even-period classes, " + std::to_string(skipped) + " odd skipped"};
  });

  run(6, "stabilization under E, E^2", 600, [&] {
    const auto& all = everything;
    std::vector<int> ok(all.size(), 0);
    parallel_for(all.size(), [&](std::size_t k) {
      const auto& e = all[k];
      const Braid v = e.augment_for_stabilization ? augment(e.skeleton, AugmentMode::constant) : e.skeleton;
      const StabilizationReport r = verify_stabilization(e.free, v, 2);
      ok[k] = r.holds && format_cp(r.indices.front().cp) == e.cp;
    });
    int held = 0;
    std::string bad;
    for (std::size_t k = 0; k < all.size(); ++k) {
      held += ok[k];
      if (!ok[k]) bad += " " + all[k].name;
    }
    return Outcome{held == static_cast<int>(all.size()),
                   std::to_string(held) + "/" + std::to_string(all.size()) + " classes" + bad};
  });

  run(7, "comparison on 1000 runs", 0, [] {
    std::mt19937 rng(5);
    std::vector<std::pair<Braid, BraidD>> runs;
    while (runs.size() < 1000) {
      const int d = 1 + static_cast<int>(rng() % 8), n = 1 + static_cast<int>(rng() % 5);
      std::vector<int> tau(n);
      for (int a = 0; a < n; ++a) tau[a] = a;
      if (rng() % 2) std::shuffle(tau.begin(), tau.end(), rng);
      MatQ s(n, d + 1);
      for (int a = 0; a < n; ++a)
        for (int i = 0; i < d; ++i) s(a, i) = Rational(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2));
      for (int a = 0; a < n; ++a) s(a, d) = s(tau[a], 0);
      const Braid sk(s, Permutation(tau));
      if (!validate(sk).regular()) continue;
      const int nf = 1 + static_cast<int>(rng() % 2);
      Eigen::MatrixXd fm(nf, d + 1);
      std::uniform_real_distribution<double> U(-5, 5);
      for (int a = 0; a < nf; ++a) {
        for (int i = 0; i < d; ++i) fm(a, i) = U(rng);
        fm(a, d) = fm(a, 0);
      }
      runs.emplace_back(sk, stack(BraidD(fm), sk.cast<double>()));
    }
    std::vector<ComparisonReport> reps(runs.size());
    std::vector<int> failed(runs.size(), 0);
    parallel_for(runs.size(), [&](std::size_t k) {
      try {
        reps[k] = comparison_report(integrate(runs[k].second, skeletal_system(runs[k].first), 5, 1e-9), runs[k].second.tau());
      } catch (const braid_error&) {
        failed[k] = 1;
      }
    });
    int inc = 0, mism = 0, tang = 0, errs = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      inc += reps[k].increases;
      mism += reps[k].mismatches;
      tang += reps[k].tangencies;
      errs += failed[k];
    }
    return Outcome{inc == 0 && mism == 0 && errs == 0,
                   "increases " + std::to_string(inc) + ", off -2 jumps " + std::to_string(mism) + ", tangencies " +
                       std::to_string(tang) + ", integration failures " + std::to_string(errs)};
  });

  run(8, "skeletal system", 0, [] {
    bool ok = true;
    double fp = 0, drift = 0;
    long long samples = 0, viol = 0;
    for (const auto& e : {example1(), example2()}) {
      ok = ok && skeletal_residual_exact(e.skeleton) == 0;
      fp = std::max(fp, skeletal_residual(e.skeleton));
      const RecurrenceSystem sys = skeletal_system(e.skeleton);
      const SamplingReport r = sample_parabolic(sys, -1, 6, 10);
      samples += r.samples;
      viol += r.violations;
      const BraidD v = e.skeleton.cast<double>();
      const Trajectory tr = integrate(v, sys, 10, 1e-9);
      drift = std::max(drift, (tr.states.back().anchors() - v.anchors()).cwiseAbs().maxCoeff());
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "exact residual %s, fp %.1e, A1 %lld/%lld, drift %.1e", ok ? "0" : "nonzero", fp,
                  samples - viol, samples, drift);
    return Outcome{ok && fp < 1e-12 && viol == 0 && samples >= 1000 && drift < 1e-9, buf};
  });

  run(9, "forced allen-cahn solutions", 0, [] {
    const int d = 6;
    const RecurrenceSystem sys = allen_cahn(d, 3.1);
    const Braid v = settle_skeleton(sys, canonical_skeleton(ForcingCase::I, 1, 4, 3, false));
    const double settled = sys.residual(v.cast<double>()).cwiseAbs().maxCoeff();
    const BraidClassComplex cls = enumerate_class(canonical_free(ForcingCase::I, 1, 4, 3, false), v);
    const ConleyIndex h = conley_index(cls);
    const FixedPointSearch fs = find_fixed_points(sys, cls, 10000);
    std::vector<long long> counts(d + 1, 0);
    bool nondeg = true, small = true;
    for (const auto& s : fs.solutions) {
      counts[s.coindex] += 1;
      nondeg = nondeg && !s.degenerate;
      small = small && s.residual < 1e-8;
    }
    std::string c;
    for (int k = 0; k <= 3; ++k) c += " c" + std::to_string(k) + "=" + std::to_string(counts[k]);
    const bool morse = morse_relations(counts, h.cp);
    char buf[200];
    std::snprintf(buf, sizeof buf, "skeleton residual %.1e, CP %s, %zu solutions,%s, Morse %s", settled,
                  format_cp(h.cp).c_str(), fs.solutions.size(), c.c_str(), morse ? "ok" : "broken");
    return Outcome{settled < 1e-8 && fs.solutions.size() >= 2 && small && nondeg && counts[1] > 0 && counts[2] > 0 && morse,
                   buf};
  });

  run(10, "shift by D E^2", 0, [] {
    const CorpusEntry e = comp_case(ForcingCase::I);
    const ShiftReport r = shift_check(e.free, augment(e.skeleton, AugmentMode::constant));
    return Outcome{r.holds, format_cp(r.dual.cp) + " -> " + format_cp(r.dual_extended.cp)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
