#include "flatband/serialize.hpp"

#include <charconv>
#include <sstream>

namespace flatband {

json big_to_json(const BigInt& v) { return v.get_str(); }

BigInt big_from_json(const json& j) {
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
      throw Error(ErrorKind::InvalidArgument, "not a decimal integer: " + j.get<std::string>());
    return v;
  }
  if (j.is_number_unsigned()) return BigInt(j.get<unsigned long>());
  if (j.is_number_integer()) return BigInt(j.get<long>());
  throw Error(ErrorKind::InvalidArgument, "expected a big integer");
}

void to_json(json& j, const TorusSpec& s) { j = json::array({s.L1(), s.L2(), s.L3()}); }

TorusSpec spec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::InvalidArgument, "size must be a triple");
  return TorusSpec(j[0].get<int>(), j[1].get<int>(), j[2].get<int>());
}

void to_json(json& j, const LatticeSummary& s) {
  j = {{"vertices", s.vertices},
       {"edges", s.edges},
       {"faces", s.faces},
       {"minDegree", s.min_degree},
       {"maxDegree", s.max_degree},
       {"minLineDegree", s.min_line_degree},
       {"maxLineDegree", s.max_line_degree},
       {"hoppingDiagonalTwo", s.hopping_diagonal_two},
       {"vertexCliques", s.vertex_cliques},
       {"kernelDim", s.kernel_dim},
       {"faceSpanRank", s.face_span_rank},
       {"flatBandMultiplicity", s.spectrum.multiplicity},
       {"minEigenvalue", s.spectrum.min_eigenvalue},
       {"maxEigenvalue", s.spectrum.max_eigenvalue}};
}

void from_json(const json& j, LatticeSummary& s) {
  j.at("vertices").get_to(s.vertices);
  j.at("edges").get_to(s.edges);
  j.at("faces").get_to(s.faces);
  j.at("minDegree").get_to(s.min_degree);
  j.at("maxDegree").get_to(s.max_degree);
  j.at("minLineDegree").get_to(s.min_line_degree);
  j.at("maxLineDegree").get_to(s.max_line_degree);
  j.at("hoppingDiagonalTwo").get_to(s.hopping_diagonal_two);
  j.at("vertexCliques").get_to(s.vertex_cliques);
  j.at("kernelDim").get_to(s.kernel_dim);
  j.at("faceSpanRank").get_to(s.face_span_rank);
  j.at("flatBandMultiplicity").get_to(s.spectrum.multiplicity);
  j.at("minEigenvalue").get_to(s.spectrum.min_eigenvalue);
  j.at("maxEigenvalue").get_to(s.spectrum.max_eigenvalue);
}

void to_json(json& j, const CountResult& r) {
  j = {{"count", big_to_json(r.count)}, {"nodes", r.nodes}, {"seconds", r.seconds}, {"completed", r.completed}};
}

void from_json(const json& j, CountResult& r) {
  r.count = big_from_json(j.at("count"));
  j.at("nodes").get_to(r.nodes);
  j.at("seconds").get_to(r.seconds);
  j.at("completed").get_to(r.completed);
}

void to_json(json& j, const VerifyReport& r) {
  j = {{"valid", r.valid},
       {"faceCount", r.face_count},
       {"expectedFaces", r.expected_faces},
       {"uncovered", r.uncovered},
       {"multiplyCovered", r.multiply_covered}};
}

void from_json(const json& j, VerifyReport& r) {
  j.at("valid").get_to(r.valid);
  j.at("faceCount").get_to(r.face_count);
  j.at("expectedFaces").get_to(r.expected_faces);
  j.at("uncovered").get_to(r.uncovered);
  j.at("multiplyCovered").get_to(r.multiply_covered);
}

void to_json(json& j, const PackingClass& c) {
  j = {{"classified", c.classified}, {"base", c.base}, {"kind", to_string(c.kind)}, {"shifts", c.shifts}};
}

void from_json(const json& j, PackingClass& c) {
  j.at("classified").get_to(c.classified);
  j.at("base").get_to(c.base);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "none") c.kind = ShiftKind::None;
  else if (kind == "column") c.kind = ShiftKind::Column;
  else if (kind == "row") c.kind = ShiftKind::Row;
  else throw Error(ErrorKind::InvalidArgument, "unknown shift kind " + kind);
  j.at("shifts").get_to(c.shifts);
}

void to_json(json& j, const Packing2D& p) {
  json squares = json::array();
  for (const auto& s : p.squares) squares.push_back({s.a, s.b});
  j = {{"size", {p.La, p.Lb}}, {"squares", squares}};
}

void from_json(const json& j, Packing2D& p) {
  p.La = j.at("size").at(0).get<int>();
  p.Lb = j.at("size").at(1).get<int>();
  p.squares.clear();
  for (const auto& s : j.at("squares")) p.squares.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
}

void to_json(json& j, const ColumnGramReport& r) {
  j = {{"length", r.length},
       {"selfOverlap", big_to_json(r.self_up)},
       {"selfOverlapDown", big_to_json(r.self_down)},
       {"crossOverlap", big_to_json(r.cross)},
       {"det", big_to_json(r.det)},
       {"expectedSelfOverlap", big_to_json(r.expected_self)},
       {"ok", r.ok}};
}

void from_json(const json& j, ColumnGramReport& r) {
  j.at("length").get_to(r.length);
  r.self_up = big_from_json(j.at("selfOverlap"));
  r.self_down = big_from_json(j.at("selfOverlapDown"));
  r.cross = big_from_json(j.at("crossOverlap"));
  r.det = big_from_json(j.at("det"));
  r.expected_self = big_from_json(j.at("expectedSelfOverlap"));
  j.at("ok").get_to(r.ok);
}

void to_json(json& j, const FamilyRankReport& r) {
  j = {{"states", r.states},
       {"columns", r.columns},
       {"rank", r.rank},
       {"allValid", r.all_valid},
       {"minScaledEigenvalue", r.min_scaled_eigenvalue}};
}

void from_json(const json& j, FamilyRankReport& r) {
  j.at("states").get_to(r.states);
  j.at("columns").get_to(r.columns);
  j.at("rank").get_to(r.rank);
  j.at("allValid").get_to(r.all_valid);
  j.at("minScaledEigenvalue").get_to(r.min_scaled_eigenvalue);
}

void to_json(json& j, const SpanRankReport& r) {
  j = {{"limit", r.limit}, {"states", r.states}, {"rank", r.rank}, {"minScaledEigenvalue", r.min_scaled_eigenvalue}};
}

void from_json(const json& j, SpanRankReport& r) {
  j.at("limit").get_to(r.limit);
  j.at("states").get_to(r.states);
  j.at("rank").get_to(r.rank);
  j.at("minScaledEigenvalue").get_to(r.min_scaled_eigenvalue);
}

void to_json(json& j, const ZeroModeReport& r) {
  j = {{"kernelDim", r.kernel_dim},
       {"pairCount", r.pair_count},
       {"constraintRows", r.constraint_rows},
       {"constraintRank", r.constraint_rank},
       {"dimension", r.dimension},
       {"samplesChecked", r.samples_checked},
       {"samplesAnnihilated", r.samples_annihilated},
       {"disjointPairsChecked", r.disjoint_pairs_checked},
       {"disjointPairsInKernel", r.disjoint_pairs_in_kernel},
       {"disjointPairRank", r.disjoint_pair_rank},
       {"sound", r.sound}};
}

void from_json(const json& j, ZeroModeReport& r) {
  j.at("kernelDim").get_to(r.kernel_dim);
  j.at("pairCount").get_to(r.pair_count);
  j.at("constraintRows").get_to(r.constraint_rows);
  j.at("constraintRank").get_to(r.constraint_rank);
  j.at("dimension").get_to(r.dimension);
  j.at("samplesChecked").get_to(r.samples_checked);
  j.at("samplesAnnihilated").get_to(r.samples_annihilated);
  j.at("disjointPairsChecked").get_to(r.disjoint_pairs_checked);
  j.at("disjointPairsInKernel").get_to(r.disjoint_pairs_in_kernel);
  j.at("disjointPairRank").get_to(r.disjoint_pair_rank);
  j.at("sound").get_to(r.sound);
}

void to_json(json& j, const EntropyReport& r) {
  j = {{"criticalParticles", r.critical_particles},
       {"particles", r.particles},
       {"count", big_to_json(r.count)},
       {"density", r.density},
       {"criticalDensity", r.critical_density},
       {"bound", r.bound}};
}

void from_json(const json& j, EntropyReport& r) {
  j.at("criticalParticles").get_to(r.critical_particles);
  j.at("particles").get_to(r.particles);
  r.count = big_from_json(j.at("count"));
  j.at("density").get_to(r.density);
  j.at("criticalDensity").get_to(r.critical_density);
  j.at("bound").get_to(r.bound);
}

void to_json(json& j, const BoundsReport& r) {
  j = {{"size", r.spec},
       {"t1Lower", big_to_json(r.t1_lower)},
       {"t1Upper", big_to_json(r.t1_upper)},
       {"t2Lower", big_to_json(r.t2_lower)},
       {"omega4", r.omega4 ? json(*r.omega4) : json(nullptr)},
       {"spanRank", r.span_rank ? json(*r.span_rank) : json(nullptr)},
       {"spanIncludesRotatedFamily", r.span_includes_rotated_family},
       {"s4", r.s4 ? json(*r.s4) : json(nullptr)},
       {"s4Lower", r.s4_lower},
       {"s4Upper", r.s4_upper},
       {"lowerConfirmed", r.lower_confirmed},
       {"upperConfirmed", r.upper_confirmed},
       {"spanConfirmed", r.span_confirmed}};
}

void from_json(const json& j, BoundsReport& r) {
  r.spec = spec_from_json(j.at("size"));
  r.t1_lower = big_from_json(j.at("t1Lower"));
  r.t1_upper = big_from_json(j.at("t1Upper"));
  r.t2_lower = big_from_json(j.at("t2Lower"));
  r.omega4.reset();
  if (!j.at("omega4").is_null()) r.omega4 = j.at("omega4").get<CountResult>();
  r.span_rank.reset();
  if (!j.at("spanRank").is_null()) r.span_rank = j.at("spanRank").get<std::size_t>();
  j.at("spanIncludesRotatedFamily").get_to(r.span_includes_rotated_family);
  r.s4.reset();
  if (!j.at("s4").is_null()) r.s4 = j.at("s4").get<double>();
  j.at("s4Lower").get_to(r.s4_lower);
  j.at("s4Upper").get_to(r.s4_upper);
  j.at("lowerConfirmed").get_to(r.lower_confirmed);
  j.at("upperConfirmed").get_to(r.upper_confirmed);
  j.at("spanConfirmed").get_to(r.span_confirmed);
}

json gram_to_json(const BigMatrix& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < g.cols(); ++k) row.push_back(big_to_json(g(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

BigMatrix gram_from_json(const json& j) {
  const std::size_t n = j.size();
  BigMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != n) throw Error(ErrorKind::InvalidArgument, "Gram matrix must be square");
    for (std::size_t k = 0; k < n; ++k) g(i, k) = big_from_json(j[i][k]);
  }
  return g;
}

json decomposition_to_json(const CubicTorus& torus, const Decomposition& d) {
  json faces = json::array();
  for (FaceId f : d.faces()) {
    const Face face = CubicTorus::face(f);
    faces.push_back({{"id", f}, {"anchor", torus.coords(face.anchor)}, {"plane", to_string(face.plane)}});
  }
  return {{"size", torus.spec()}, {"faces", faces}};
}

Decomposition decomposition_from_json(const json& j) {
  std::vector<FaceId> ids;
  for (const auto& f : j.at("faces")) ids.push_back(f.is_object() ? f.at("id").get<FaceId>() : f.get<FaceId>());
  return Decomposition(std::move(ids));
}

json lattice_to_json(const CubicTorus& torus) {
  json vertices = json::array(), edges = json::array();
  for (VertexId v = 0; v < torus.num_vertices(); ++v) vertices.push_back({{"id", v}, {"coords", torus.coords(v)}});
  for (EdgeId e = 0; e < torus.num_edges(); ++e) {
    const auto ends = torus.endpoints(e);
    edges.push_back({{"id", e}, {"axis", to_string(CubicTorus::edge(e).axis)}, {"endpoints", {ends[0], ends[1]}}});
  }
  return {{"size", torus.spec()}, {"vertices", vertices}, {"edges", edges}};
}

std::string graph_dot(const CubicTorus& torus) {
  std::ostringstream os;
  os << "graph G {\n";
  for (VertexId v = 0; v < torus.num_vertices(); ++v) {
    const auto c = torus.coords(v);
    os << "  v" << v << " [label=\"" << c[0] << "," << c[1] << "," << c[2] << "\"];\n";
  }
  for (EdgeId e = 0; e < torus.num_edges(); ++e) {
    const auto ends = torus.endpoints(e);
    os << "  v" << ends[0] << " -- v" << ends[1] << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string line_graph_dot(const CubicTorus& torus) {
  std::ostringstream os;
  os << "graph LG {\n";
  for (EdgeId e = 0; e < torus.num_edges(); ++e) os << "  e" << e << ";\n";
  for (EdgeId e = 0; e < torus.num_edges(); ++e)
    for (EdgeId f : torus.line_graph_neighbors(e))
      if (e < f) os << "  e" << e << " -- e" << f << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

// Shortest text that reads back to the same double.
std::string fixed(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string count_csv_header() { return "spec,omega4,nodes,seconds,completed"; }

std::string count_csv_row(const TorusSpec& spec, const CountResult& r) {
  return spec.label() + "," + r.count.get_str() + "," + std::to_string(r.nodes) + "," + fixed(r.seconds) + "," +
         (r.completed ? "true" : "false");
}

std::string bounds_csv_header() { return "spec,t1_lower,omega4,t1_upper,t2_lower,span_rank,s4,complete"; }

std::string bounds_csv_row(const BoundsReport& r) {
  return r.spec.label() + "," + r.t1_lower.get_str() + "," + (r.omega4 ? r.omega4->count.get_str() : "") + "," +
         r.t1_upper.get_str() + "," + r.t2_lower.get_str() + "," +
         (r.span_rank ? std::to_string(*r.span_rank) : "") + "," + (r.s4 ? fixed(*r.s4) : "") + "," +
         (r.omega4 && r.omega4->completed ? "true" : "false");
}

std::string entropy_csv_header() { return "critical_particles,particles,count,density,critical_density,bound"; }

std::string entropy_csv_row(const EntropyReport& r) {
  return std::to_string(r.critical_particles) + "," + std::to_string(r.particles) + "," + r.count.get_str() + "," +
         fixed(r.density) + "," + fixed(r.critical_density) + "," + fixed(r.bound);
}

}  // namespace flatband
