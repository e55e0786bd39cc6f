#include "braidforce/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace braidforce {

json complex_to_json(const BraidClassComplex& c, const ExitSet& exit) {
  json boxes = json::array();
  for (const auto& k : c.boxes) boxes.push_back(k);
  const CellSet closed = closed_cells(c);
  json cells = json::array();
  for (std::size_t dim = 0; dim < closed.by_dim.size(); ++dim) {
    json level = json::array();
    for (const auto& g : closed.by_dim[dim]) level.push_back(json{{"cell", g}, {"exit", exit.cells.contains(g)}});
    cells.push_back(std::move(level));
  }
  return json{{"d", c.d()},
              {"bounded", c.bounded},
              {"proper", c.proper},
              {"signature", c.signature},
              {"boxes", std::move(boxes)},
              {"cells", std::move(cells)},
              {"exit_ties", exit.ties}};
}

json index_to_json(const ConleyIndex& h) {
  return json{{"betti", h.betti}, {"cp", format_cp(h.cp, true)}, {"euler", h.euler}, {"torsion", h.torsion}};
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << x;
  return os.str();
}

} // namespace

std::string render_svg(const Braid& b, int free_strands) {
  const int d = b.d();
  double lo = to_double(b.anchors()(0, 0)), hi = lo;
  for (Eigen::Index a = 0; a < b.anchors().rows(); ++a)
    for (Eigen::Index i = 0; i < b.anchors().cols(); ++i) {
      lo = std::min(lo, to_double(b.anchors()(a, i)));
      hi = std::max(hi, to_double(b.anchors()(a, i)));
    }
  if (hi == lo) hi = lo + 1;
  const double W = 120.0 * d + 80, H = 400, m = 40;
  auto X = [&](int i) { return m + (W - 2 * m) * i / d; };
  auto Y = [&](double u) { return H - m - (H - 2 * m) * (u - lo) / (hi - lo); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
     << "\" viewBox=\"0 0 " << num(W) << ' ' << num(H) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 0; i <= d; ++i)
    os << "<line x1=\"" << num(X(i)) << "\" y1=\"" << num(m / 2) << "\" x2=\"" << num(X(i)) << "\" y2=\""
       << num(H - m / 2) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  // skeleton first so free strands sit on top
  std::vector<int> order;
  for (int a = free_strands; a < b.n(); ++a) order.push_back(a);
  for (int a = 0; a < std::min(free_strands, b.n()); ++a) order.push_back(a);
  for (int a : order) {
    const bool free = a < free_strands;
    os << "<polyline fill=\"none\" stroke=\"" << (free ? "#888888" : "black") << "\" stroke-width=\""
       << (free ? "2.5" : "2") << "\" points=\"";
    for (int i = 0; i <= d; ++i) os << (i ? " " : "") << num(X(i)) << ',' << num(Y(to_double(b(a, i))));
    os << "\"/>\n";
  }
  const BraidRegularity reg = validate(b);
  for (const auto& w : reg.witnesses)
    os << "<circle cx=\"" << num(X(w.i)) << "\" cy=\"" << num(Y(to_double(b(w.a, w.i))))
       << "\" r=\"6\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

} // namespace braidforce
