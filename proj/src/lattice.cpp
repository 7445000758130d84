#include "flatband/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace flatband {

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix shapes do not match");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntegerMatrix identity_matrix(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

const char* to_string(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

const char* to_string(Plane p) {
  switch (p) {
    case Plane::XY: return "XY";
    case Plane::YZ: return "YZ";
    case Plane::ZX: return "ZX";
  }
  return "?";
}

Plane parse_plane(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "XY") return Plane::XY;
  if (up == "YZ") return Plane::YZ;
  if (up == "ZX" || up == "XZ") return Plane::ZX;
  throw Error(ErrorKind::InvalidArgument, "unknown plane '" + name + "' (expected XY, YZ or ZX)");
}

TorusSpec::TorusSpec(int a, int b, int c) : ext_{a, b, c} {
  for (int l : ext_) {
    if (l < 4 || l % 2 != 0)
      throw Error(ErrorKind::InvalidArgument,
                  "extent must be even >= 4 (got " + std::to_string(l) + ")");
  }
  std::sort(ext_.begin(), ext_.end());
}

std::string TorusSpec::label() const {
  std::ostringstream os;
  os << ext_[0] << 'x' << ext_[1] << 'x' << ext_[2];
  return os.str();
}

CubicTorus::CubicTorus(const TorusSpec& spec)
    : spec_(spec),
      nv_(static_cast<std::size_t>(spec.L1()) * spec.L2() * spec.L3()),
      faces_of_edge_(3 * nv_) {
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const auto [u, a] = edge(e);
    std::size_t k = 0;
    for (Plane p : kPlanes) {
      if (first_axis(p) == a) {
        faces_of_edge_[e][k++] = face_id({u, p});
        faces_of_edge_[e][k++] = face_id({shift(u, second_axis(p), -1), p});
      } else if (second_axis(p) == a) {
        faces_of_edge_[e][k++] = face_id({u, p});
        faces_of_edge_[e][k++] = face_id({shift(u, first_axis(p), -1), p});
      }
    }
    std::sort(faces_of_edge_[e].begin(), faces_of_edge_[e].end());
  }
}

std::array<int, 3> CubicTorus::coords(VertexId v) const {
  const int l1 = spec_.L1(), l2 = spec_.L2();
  const int x = static_cast<int>(v % l1);
  const int y = static_cast<int>((v / l1) % l2);
  const int z = static_cast<int>(v / (static_cast<VertexId>(l1) * l2));
  return {x, y, z};
}

VertexId CubicTorus::vertex(int x, int y, int z) const {
  auto wrap = [](int c, int l) { return ((c % l) + l) % l; };
  const int l1 = spec_.L1(), l2 = spec_.L2(), l3 = spec_.L3();
  return static_cast<VertexId>(wrap(x, l1) + l1 * (wrap(y, l2) + l2 * wrap(z, l3)));
}

VertexId CubicTorus::shift(VertexId v, Axis a, int delta) const {
  auto c = coords(v);
  c[static_cast<int>(a)] += delta;
  return vertex(c[0], c[1], c[2]);
}

int CubicTorus::parity(VertexId v) const {
  const auto c = coords(v);
  return (c[0] + c[1] + c[2]) & 1;
}

std::array<VertexId, 2> CubicTorus::endpoints(EdgeId e) const {
  const auto [u, a] = edge(e);
  return {u, shift(u, a, 1)};
}

std::optional<EdgeId> CubicTorus::edge_between(VertexId u, VertexId v) const {
  for (Axis a : kAxes) {
    if (shift(u, a, 1) == v) return edge_id(u, a);
    if (shift(v, a, 1) == u) return edge_id(v, a);
  }
  return std::nullopt;
}

std::array<EdgeId, 6> CubicTorus::incident_edges(VertexId v) const {
  std::array<EdgeId, 6> out{};
  for (Axis a : kAxes) {
    const int i = static_cast<int>(a);
    out[i] = edge_id(v, a);
    out[3 + i] = edge_id(shift(v, a, -1), a);
  }
  return out;
}

std::array<VertexId, 4> CubicTorus::face_vertices(const Face& f) const {
  const Axis p = first_axis(f.plane), q = second_axis(f.plane);
  const VertexId v0 = f.anchor;
  const VertexId v1 = shift(v0, p, 1);
  const VertexId v3 = shift(v0, q, 1);
  const VertexId v2 = shift(v1, q, 1);
  return {v0, v1, v2, v3};
}

std::array<EdgeId, 4> CubicTorus::face_edges(const Face& f) const {
  const Axis p = first_axis(f.plane), q = second_axis(f.plane);
  const auto v = face_vertices(f);
  return {edge_id(v[0], p), edge_id(v[1], q), edge_id(v[3], p), edge_id(v[0], q)};
}

std::array<EdgeId, 10> CubicTorus::line_graph_neighbors(EdgeId e) const {
  std::array<EdgeId, 10> out{};
  std::size_t k = 0;
  for (VertexId end : endpoints(e))
    for (EdgeId n : incident_edges(end))
      if (n != e) out[k++] = n;
  return out;
}

CubicTorus build_torus(const TorusSpec& spec) { return CubicTorus(spec); }

IntegerMatrix incidence_matrix(const CubicTorus& torus) {
  IntegerMatrix b(torus.num_vertices(), torus.num_edges());
  for (EdgeId e = 0; e < torus.num_edges(); ++e)
    for (VertexId v : torus.endpoints(e)) b(v, e) = 1;
  return b;
}

IntegerMatrix line_graph_adjacency(const CubicTorus& torus) {
  const std::size_t ne = torus.num_edges();
  IntegerMatrix a(ne, ne);
  for (EdgeId e = 0; e < ne; ++e)
    for (EdgeId n : torus.line_graph_neighbors(e)) a(e, n) = 1;
  return a;
}

IntegerMatrix hopping_matrix(const CubicTorus& torus) {
  IntegerMatrix t = line_graph_adjacency(torus);
  for (std::size_t e = 0; e < t.rows(); ++e) t(e, e) = 2;
  return t;
}

std::vector<Face> enumerate_faces(const CubicTorus& torus) {
  std::vector<Face> faces;
  faces.reserve(torus.num_faces());
  for (FaceId id = 0; id < torus.num_faces(); ++id) faces.push_back(CubicTorus::face(id));
  return faces;
}

std::vector<SignedEntry> cycle_state(const CubicTorus& torus, std::span<const VertexId> walk) {
  if (walk.size() < 4 || walk.size() % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "cycle must be an even closed walk of length >= 4");
  std::vector<SignedEntry> out;
  out.reserve(walk.size());
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const VertexId from = walk[i];
    const VertexId to = walk[(i + 1) % walk.size()];
    const auto e = torus.edge_between(from, to);
    if (!e) throw Error(ErrorKind::InvalidArgument, "walk contains non-adjacent consecutive vertices");
    out.push_back({*e, torus.parity(from) == 0 ? 1 : -1});
  }
  return out;
}

FaceState face_state(const CubicTorus& torus, const Face& face) {
  const auto walk = torus.face_vertices(face);
  const auto entries = cycle_state(torus, walk);
  FaceState s{face, {}};
  std::copy(entries.begin(), entries.end(), s.entries.begin());
  return s;
}

std::vector<std::int64_t> to_dense(const CubicTorus& torus, std::span<const SignedEntry> entries) {
  std::vector<std::int64_t> v(torus.num_edges(), 0);
  for (const auto& [e, s] : entries) v[e] += s;
  return v;
}

std::vector<std::int64_t> apply_incidence(const CubicTorus& torus, std::span<const std::int64_t> v) {
  std::vector<std::int64_t> out(torus.num_vertices(), 0);
  for (EdgeId e = 0; e < torus.num_edges(); ++e) {
    if (v[e] == 0) continue;
    for (VertexId end : torus.endpoints(e)) out[end] += v[e];
  }
  return out;
}

}  // namespace flatband
