#include "braidforce/braid_io.hpp"
#include "braidforce/corpus.hpp"
#include "braidforce/lagrangian.hpp"
#include "braidforce/parallel.hpp"
#include "braidforce/report.hpp"
#include "braidforce/skeletal.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace braidforce;

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a braid file or a relative braid file; free strands first when relative
struct Input {
  Braid all;
  std::optional<RelativeBraid> rel;
  int free_strands = 0;
};

Input read_input(const std::string& path) {
  const json j = read_json_file(path);
  Input in;
  if (j.is_object() && j.contains("free")) {
    in.rel = relative_from_json(j);
    in.all = stack(in.rel->free, in.rel->skeleton);
    in.free_strands = in.rel->free.n();
  } else {
    in.all = braid_from_json(j);
  }
  return in;
}

RelativeBraid read_relative(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.is_object() || !j.contains("free")) throw usage_error(path + ": expected a relative braid {\"free\", \"skeleton\"}");
  return relative_from_json(j);
}

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_text_file(out, j.dump(2) + "\n");
}

std::string kv(const std::string& desc, const std::string& key, const std::string& fallback) {
  // "name:a=1,b=x"
  const auto colon = desc.find(':');
  std::stringstream ss(colon == std::string::npos ? "" : desc.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq != std::string::npos && item.substr(0, eq) == key) return item.substr(eq + 1);
  }
  return fallback;
}

double number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw usage_error("bad number for " + what + ": '" + s + "'");
  }
}

json braid_d_to_json(const BraidD& b) {
  json strands = json::array();
  for (int a = 0; a < b.n(); ++a) {
    json s = json::array();
    for (int i = 0; i <= b.d(); ++i) s.push_back(b(a, i));
    strands.push_back(std::move(s));
  }
  return json{{"n", b.n()}, {"d", b.d()}, {"tau", b.tau().images()}, {"strands", std::move(strands)}};
}

json index_report(const ConleyIndex& h) {
  json j = index_to_json(h);
  j["morse"] = {{"exact_nondegenerate", morse_bounds(h, MorseRegime::exact_nondegenerate)},
                {"exact", morse_bounds(h, MorseRegime::exact)},
                {"non_exact", morse_bounds(h, MorseRegime::non_exact)},
                {"non_exact_nondegenerate", morse_bounds(h, MorseRegime::non_exact_nondegenerate)}};
  return j;
}

void require_class(const BraidClassComplex& c, bool augmented) {
  const std::string hint = augmented ? "" : " (try --augment)";
  if (!c.bounded) throw braid_error(errc::not_bounded, "class is not bounded" + hint);
  if (!c.proper) throw braid_error(errc::not_proper, "class is not proper" + hint);
}

// ---- systems ----

struct SystemOptions {
  std::string kind = "skeletal";
  double c = 1, k = 1;
  std::string file;
};

RecurrenceSystem system_from_json(const json& j, int d, const Braid* skeleton) {
  const std::string kind = j.value("system", std::string());
  if (kind == "allen-cahn") return allen_cahn(d, j.value("c", 1.0));
  if (kind == "fk") return frenkel_kontorova(d, j.value("k", 1.0));
  if (kind == "skeletal") {
    if (j.contains("skeleton")) return skeletal_system(braid_from_json(j.at("skeleton")));
    if (!skeleton) throw usage_error("skeletal system needs a skeleton");
    return skeletal_system(*skeleton);
  }
  if (kind == "blend") {
    if (!j.contains("a") || !j.contains("b")) throw usage_error("blend needs \"a\" and \"b\"");
    return blend(system_from_json(j.at("a"), d, skeleton), system_from_json(j.at("b"), d, skeleton),
                 j.value("lambda", 0.5));
  }
  if (kind == "lagrangian") {
    const std::string model = j.value("model", std::string("fo:lambda=2,F=four-well"));
    const double E = j.value("energy", 0.0);
    if (model.rfind("sh", 0) == 0) return lap_system(swift_hohenberg(number(kv(model, "alpha", "2"), "alpha")), E, d);
    return lap_system(first_order_model(number(kv(model, "lambda", "2"), "lambda"), kv(model, "F", "four-well")), E, d);
  }
  throw usage_error("unknown system '" + kind + "'");
}

RecurrenceSystem make_system(const SystemOptions& o, int d, const Braid* skeleton) {
  if (o.kind == "skeletal") {
    if (!skeleton) throw usage_error("--system skeletal needs a relative braid file");
    return skeletal_system(*skeleton);
  }
  if (o.kind == "allen-cahn") return allen_cahn(d, o.c);
  if (o.kind == "fk") return frenkel_kontorova(d, o.k);
  if (o.kind == "file") {
    if (o.file.empty()) throw usage_error("--system file needs --system-file");
    return system_from_json(read_json_file(o.file), d, skeleton);
  }
  throw usage_error("unknown system '" + o.kind + "'");
}

void add_system_options(CLI::App* app, SystemOptions& o) {
  app->add_option("--system", o.kind, "skeletal, allen-cahn, fk or file")
      ->check(CLI::IsMember({"skeletal", "allen-cahn", "fk", "file"}));
  app->add_option("--c", o.c, "Allen-Cahn coupling");
  app->add_option("--k", o.k, "Frenkel-Kontorova coupling");
  app->add_option("--system-file", o.file, "JSON system description");
}

// ---- subcommands ----

int cmd_check(const std::string& path, const std::string& out) {
  const Input in = read_input(path);
  const BraidRegularity r = validate(in.all);
  json w = json::array();
  for (const auto& s : r.witnesses) w.push_back({{"i", s.i}, {"a", s.a}, {"b", s.b}});
  json col = json::array();
  for (const auto& [a, b] : r.collapsed) col.push_back({a, b});
  json rep{{"n", in.all.n()},
           {"d", in.all.d()},
           {"regularity", kind_name(r.kind)},
           {"codimension", r.codimension},
           {"witnesses", w},
           {"collapsed", col},
           {"word_metric", r.regular() ? json(word_metric(in.all)) : json(nullptr)},
           {"updown", in.all.d() % 2 == 0 && is_updown(in.all)},
           {"components", in.all.tau().cycles()}};
  emit(rep, out);
  return r.regular() ? 0 : 2;
}

int cmd_classify(const std::string& path, const std::string& out, const std::string& dump, bool all) {
  if (all) {
    const Input in = read_input(path);
    const Braid skel = in.rel ? in.rel->skeleton : in.all;
    json list = json::array();
    for (const auto& c : enumerate_all_classes(skel)) {
      json e{{"boxes", c.boxes.size()}, {"bounded", c.bounded}, {"proper", c.proper}, {"signature", c.signature}};
      if (c.bounded && c.proper) e["cp"] = format_cp(conley_index(c).cp, true);
      list.push_back(std::move(e));
    }
    emit(json{{"classes", list}}, out);
    return 0;
  }
  const RelativeBraid r = read_relative(path);
  const BraidClassComplex c = enumerate_class(r.free, r.skeleton);
  const ExitSet ex = exit_set(c);
  if (!dump.empty()) write_text_file(dump, complex_to_json(c, ex).dump(2) + "\n");
  emit(json{{"boxes", c.boxes.size()},
            {"bounded", c.bounded},
            {"proper", c.proper},
            {"signature", c.signature},
            {"crossings", c.crossing_total},
            {"exit_ties", ex.ties}},
       out);
  return 0;
}

struct IndexOptions {
  int stabilize = 0;
  bool dual = false, wedge = false, text = false;
  std::string augment;
};

int cmd_index(const std::string& path, const std::string& out, const IndexOptions& o) {
  RelativeBraid r = read_relative(path);
  if (!o.augment.empty())
    r.skeleton = augment(r.skeleton, o.augment == "updown" ? AugmentMode::updown : AugmentMode::constant);
  const BraidClassComplex c = enumerate_class(r.free, r.skeleton);
  require_class(c, !o.augment.empty());
  const ConleyIndex h = o.wedge ? topological_index(r.free, r.skeleton) : conley_index(c);
  json rep = index_report(h);
  bool ok = true;
  if (o.stabilize > 0) {
    StabilizationReport s;
    try {
      s = verify_stabilization(r.free, r.skeleton, o.stabilize);
    } catch (const braid_error& e) {
      if (!o.augment.empty() || (e.code() != errc::not_bounded && e.code() != errc::not_proper)) throw;
      throw braid_error(e.code(), std::string(e.what()).substr(std::string(errc_name(e.code())).size() + 2) +
                                      " after extension (try --augment)");
    }
    json seq = json::array();
    for (const auto& x : s.indices) seq.push_back(format_cp(x.cp, true));
    rep["stabilization"] = {{"indices", seq}, {"holds", s.holds}};
    ok = ok && s.holds;
  }
  if (o.dual) {
    const DualityReport d = verify_duality(r.free, r.skeleton);
    rep["dual"] = index_to_json(d.dual);
    rep["dual"]["holds"] = d.holds;
    ok = ok && d.holds;
  }
  if (o.text) {
    std::ostringstream os;
    os << "CP_t = " << format_cp(h.cp) << "\nbetti:";
    for (long long b : h.betti) os << ' ' << b;
    os << "\neuler: " << h.euler << "\nmorse bounds:";
    for (auto& [k, v] : rep["morse"].items()) os << ' ' << k << '=' << v.get<long long>();
    os << '\n';
    if (rep.contains("stabilization")) os << "stabilization holds: " << rep["stabilization"]["holds"] << '\n';
    if (rep.contains("dual")) os << "dual CP_t = " << rep["dual"]["cp"].get<std::string>() << '\n';
    if (out.empty())
      std::cout << os.str();
    else
      write_text_file(out, os.str());
  } else {
    emit(rep, out);
  }
  if (!ok) std::cerr << "verification failed\n";
  return ok ? 0 : 2;
}

int cmd_dual(const std::string& path, const std::string& out) {
  const Input in = read_input(path);
  if (in.rel)
    emit(relative_to_json({dualize(in.rel->free), dualize(in.rel->skeleton)}), out);
  else
    emit(braid_to_json(dualize(in.all)), out);
  return 0;
}

int cmd_extend(const std::string& path, const std::string& out, int times) {
  const Input in = read_input(path);
  if (in.rel) {
    RelativeBraid r = *in.rel;
    for (int k = 0; k < times; ++k) std::tie(r.free, r.skeleton) = extend_relative(r.free, r.skeleton);
    emit(relative_to_json(r), out);
  } else {
    Braid b = in.all;
    for (int k = 0; k < times; ++k) b = extend(nudge_seam(b));
    emit(braid_to_json(b), out);
  }
  return 0;
}

int cmd_simulate(const std::string& path, const SystemOptions& so, double T, double tol, const std::string& events,
                 const std::string& out) {
  if (!(T > 0) || !(tol > 0)) throw usage_error("--T and --tol must be positive");
  const Input in = read_input(path);
  const RecurrenceSystem sys = make_system(so, in.all.d(), in.rel ? &in.rel->skeleton : nullptr);
  const Trajectory traj = integrate(in.all.cast<double>(), sys, T, tol);
  const ComparisonReport cmp = comparison_report(traj, in.all.tau());
  if (!events.empty()) {
    std::ostringstream os;
    os << "t,i,a,b,tangency\n" << std::setprecision(17);
    for (const auto& e : traj.events) os << e.t << ',' << e.i << ',' << e.a << ',' << e.b << ',' << e.tangency << '\n';
    write_text_file(events, os.str());
  }
  const BraidD& last = traj.states.back();
  json rep{{"final", braid_d_to_json(last)},
           {"steps", traj.states.size() - 1},
           {"events", traj.events.size()},
           {"comparison",
            {{"increases", cmp.increases}, {"tangencies", cmp.tangencies}, {"mismatches", cmp.mismatches}, {"ok", cmp.ok()}}}};
  if (validate(traj.states.front()).regular()) rep["word_metric_start"] = word_metric(traj.states.front());
  if (validate(last).regular()) rep["word_metric_end"] = word_metric(last);
  if (sys.exact()) {
    rep["lyapunov_start"] = sys.lyapunov(traj.states.front());
    rep["lyapunov_end"] = sys.lyapunov(last);
  }
  emit(rep, out);
  if (!cmp.ok()) throw braid_error(errc::monotonicity_breach, "crossing number increased along the flow");
  return 0;
}

json solution_json(const FixedPoint& fp) {
  return json{{"braid", braid_d_to_json(fp.braid)},
              {"residual", fp.residual},
              {"coindex", fp.coindex},
              {"degenerate", fp.degenerate}};
}

int cmd_fixed_points(const std::string& path, const SystemOptions& so, int budget, std::uint64_t seed,
                     const std::string& out) {
  if (budget < 1) throw usage_error("--budget must be positive");
  const RelativeBraid r = read_relative(path);
  const BraidClassComplex c = enumerate_class(r.free, r.skeleton);
  require_class(c, false);
  const RecurrenceSystem sys = make_system(so, r.skeleton.d(), &r.skeleton);
  const FixedPointSearch fs = find_fixed_points(sys, c, budget, seed);
  json sols = json::array();
  for (const auto& fp : fs.solutions) sols.push_back(solution_json(fp));
  emit(json{{"solutions", sols},
            {"morse_bound", fs.morse_bound},
            {"seeds_used", fs.seeds_used},
            {"exhausted", fs.exhausted},
            {"cp", format_cp(conley_index(c).cp, true)}},
       out);
  if (fs.solutions.empty()) throw braid_error(errc::none_found, "no fixed point within the budget");
  return 0;
}

struct ForceOptions {
  std::string model = "fo:lambda=4.8,F=four-well";
  double energy = 0;
  std::string forcing_case = "I";
  int q = 1, p = 3, r = -1, budget = 30;
  std::string profile;
};

int cmd_force(const ForceOptions& o, const std::string& out) {
  if (o.budget < 1) throw usage_error("--budget must be positive");
  const ForcingCase fc = parse_case(o.forcing_case);
  const int r = o.r >= 0 ? o.r : default_r(fc, o.q, o.p);
  const std::string family = o.model.substr(0, o.model.find(':'));
  const int d = 2 * o.p;
  std::optional<LagrangianModel> model;
  RecurrenceSystem sys;
  if (family == "sh") {
    model = swift_hohenberg(number(kv(o.model, "alpha", "2"), "alpha"));
    if (!convexity_holds(*model)) throw braid_error(errc::invalid_argument, "model fails the convexity bound");
  } else if (family == "fo") {
    model = first_order_model(number(kv(o.model, "lambda", "2"), "lambda"), kv(o.model, "F", "four-well"));
  } else if (family == "ac") {
    sys = allen_cahn(d, number(kv(o.model, "c", "3.1"), "c"));
  } else if (family == "fk") {
    sys = frenkel_kontorova(d, number(kv(o.model, "k", "1"), "k"));
  } else {
    throw usage_error("unknown model '" + o.model + "'");
  }
  if (model) sys = lap_system(*model, o.energy, d);
  // only second order models live on the up-down space
  const bool carrier = model && model->kind == LagrangianKind::second_order;
  const Braid guess = canonical_skeleton(fc, o.q, r, o.p, carrier);
  const Braid seed = canonical_free(fc, o.q, r, o.p, carrier);
  const Braid skeleton = settle_skeleton(sys, guess);
  const auto sols = forced_characteristics(sys, skeleton, seed, o.budget, model ? &*model : nullptr, o.energy);

  json list = json::array();
  for (const auto& s : sols) {
    json j = solution_json(s.point);
    j["linking"] = s.linking;
    list.push_back(std::move(j));
  }
  json skel = json::array();
  for (int a = 0; a < skeleton.n(); ++a) {
    json row = json::array();
    for (int i = 0; i <= skeleton.d(); ++i) row.push_back(to_double(skeleton(a, i)));
    skel.push_back(std::move(row));
  }
  emit(json{{"case", case_name(fc)}, {"q", o.q}, {"r", r}, {"p", o.p}, {"skeleton", skel}, {"solutions", list}}, out);
  if (!o.profile.empty()) {
    std::ostringstream os;
    os << "solution,x,u\n" << std::setprecision(12);
    for (std::size_t k = 0; k < sols.size(); ++k)
      for (const auto& [x, u] : sols[k].profile) os << k << ',' << x << ',' << u << '\n';
    write_text_file(o.profile, os.str());
  }
  return 0;
}

int cmd_render(const std::string& path, const std::string& out) {
  const Input in = read_input(path);
  const std::string svg = render_svg(in.all, in.free_strands);
  if (out.empty())
    std::cout << svg;
  else
    write_text_file(out, svg);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"braid class indices, parabolic flows and forced solutions"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker cap (default BRAIDFORCE_THREADS or all cores)")->check(CLI::PositiveNumber);

  std::string input, out;
  auto with_io = [&](CLI::App* sub) {
    sub->add_option("input", input, "braid or relative braid JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out, "write here instead of stdout");
  };

  auto* check = app.add_subcommand("check", "regularity, word metric, components");
  with_io(check);

  std::string dump;
  bool all = false;
  auto* classify = app.add_subcommand("classify", "class complex of a relative braid");
  with_io(classify);
  classify->add_option("--dump", dump, "write the full complex JSON");
  classify->add_flag("--all", all, "list every class of the skeleton");

  IndexOptions io;
  auto* index = app.add_subcommand("index", "homotopy index of a relative class");
  with_io(index);
  index->add_option("--stabilize", io.stabilize, "check invariance under N extensions")->check(CLI::NonNegativeNumber);
  index->add_flag("--dual", io.dual, "check the duality relation");
  index->add_flag("--wedge", io.wedge, "index of the topological class");
  index->add_option("--augment", io.augment, "augment the skeleton first")
      ->expected(0, 1)
      ->default_str("constant")
      ->check(CLI::IsMember({"constant", "updown"}));
  index->add_flag("--text", io.text, "plain text report");

  auto* dual = app.add_subcommand("dual", "dualize a braid");
  with_io(dual);

  int times = 1;
  auto* ext = app.add_subcommand("extend", "extend a braid");
  with_io(ext);
  ext->add_option("-n,--times", times, "number of extensions")->check(CLI::PositiveNumber);

  SystemOptions so;
  double T = 10, tol = 1e-9;
  std::string events;
  auto* sim = app.add_subcommand("simulate", "integrate a parabolic flow");
  sim->add_option("--braid", input, "braid or relative braid JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("-o,--out", out, "report path");
  add_system_options(sim, so);
  sim->add_option("--T", T, "end time");
  sim->add_option("--tol", tol, "integrator tolerance");
  sim->add_option("--events-out", events, "crossing events CSV");

  int budget = 64;
  std::uint64_t seed = 1;
  auto* fix = app.add_subcommand("fixed-points", "zeros of a parabolic system in a class");
  fix->add_option("--class", input, "relative braid JSON naming the class")->required()->check(CLI::ExistingFile);
  fix->add_option("-o,--out", out, "report path");
  add_system_options(fix, so);
  fix->add_option("--budget", budget, "Newton starts");
  fix->add_option("--seed", seed, "random starts seed");

  ForceOptions fo;
  auto* force = app.add_subcommand("force", "forced closed characteristics of a twist model");
  force->add_option("--model", fo.model, "sh:alpha=A | fo:lambda=L,F=quadratic|double-well|four-well | ac:c=C | fk:k=K");
  force->add_option("--energy", fo.energy, "energy level");
  force->add_option("--case", fo.forcing_case, "I, II or III")->check(CLI::IsMember({"I", "II", "III"}));
  force->add_option("--q", fo.q, "linking half-number");
  force->add_option("--p", fo.p, "half period");
  force->add_option("--r", fo.r, "band crossings (default from q and p)");
  force->add_option("--budget", fo.budget, "Newton starts");
  force->add_option("-o,--out", out, "solutions JSON");
  force->add_option("--profile-out", fo.profile, "lap profile CSV");

  auto* render = app.add_subcommand("render", "SVG diagram");
  with_io(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (threads > 0) set_thread_cap(threads);

  try {
    if (*check) return cmd_check(input, out);
    if (*classify) return cmd_classify(input, out, dump, all);
    if (*index) {
      if (index->count("--augment") && io.augment.empty()) io.augment = "constant";
      return cmd_index(input, out, io);
    }
    if (*dual) return cmd_dual(input, out);
    if (*ext) return cmd_extend(input, out, times);
    if (*sim) return cmd_simulate(input, so, T, tol, events, out);
    if (*fix) return cmd_fixed_points(input, so, budget, seed, out);
    if (*force) return cmd_force(fo, out);
    if (*render) return cmd_render(input, out);
  } catch (const usage_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 1;
  } catch (const braid_error& e) {
    std::cerr << e.what() << '\n';
    if (e.code() == errc::parse_error) return 1;
    return is_numeric(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 1;
}
