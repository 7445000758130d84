#include "flatband/decomp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace flatband {

namespace {

int wrap(int c, int l) { return ((c % l) + l) % l; }

void require_extents(int La, int Lb) {
  if (La < 4 || Lb < 4 || La % 2 || Lb % 2)
    throw Error(ErrorKind::InvalidArgument, "2D extents must be even >= 4");
}

}  // namespace

bool is_perfect_packing(const Packing2D& p) {
  if (p.La <= 0 || p.Lb <= 0) return false;
  std::vector<int> cover(static_cast<std::size_t>(p.La) * p.Lb, 0);
  for (const auto& [a, b] : p.squares)
    for (int da = 0; da < 2; ++da)
      for (int db = 0; db < 2; ++db) ++cover[wrap(a + da, p.La) + p.La * wrap(b + db, p.Lb)];
  return std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; });
}

Packing2D plane_slice(const CubicTorus& torus, const Decomposition& d, Plane plane, int layer) {
  const Axis normal = normal_axis(plane);
  if (layer < 0 || layer >= torus.spec().extent(normal))
    throw Error(ErrorKind::InvalidArgument, "layer out of range for plane " + std::string(to_string(plane)));
  const Axis first = first_axis(plane), second = second_axis(plane);
  Packing2D p;
  p.La = torus.spec().extent(first);
  p.Lb = torus.spec().extent(second);
  for (FaceId f : d.faces()) {
    const Face face = CubicTorus::face(f);
    if (face.plane != plane) continue;
    const auto c = torus.coords(face.anchor);
    if (c[static_cast<int>(normal)] != layer) continue;
    p.squares.push_back({c[static_cast<int>(first)], c[static_cast<int>(second)]});
  }
  std::sort(p.squares.begin(), p.squares.end());
  return p;
}

std::vector<Packing2D> enumerate_2d_packings(int La, int Lb, int cap) {
  require_extents(La, Lb);
  if (La * Lb > cap)
    throw Error(ErrorKind::CapExceeded, "2D torus " + std::to_string(La) + "x" + std::to_string(Lb) +
                                            " exceeds enumeration cap " + std::to_string(cap));
  const auto cell = [&](int a, int b) { return static_cast<std::uint32_t>(wrap(a, La) + La * wrap(b, Lb)); };
  std::vector<std::vector<std::uint32_t>> options;
  std::vector<SquareAnchor> anchors;
  for (int b = 0; b < Lb; ++b)
    for (int a = 0; a < La; ++a) {
      options.push_back({cell(a, b), cell(a + 1, b), cell(a, b + 1), cell(a + 1, b + 1)});
      anchors.push_back({a, b});
    }
  const ExactCoverProblem problem(static_cast<std::size_t>(La) * Lb, std::move(options));
  std::vector<Packing2D> out;
  enumerate_exact_covers(problem, [&](std::span<const std::uint32_t> chosen) {
    Packing2D p{La, Lb, {}};
    for (auto o : chosen) p.squares.push_back(anchors[o]);
    std::sort(p.squares.begin(), p.squares.end());
    out.push_back(std::move(p));
    return true;
  });
  return out;
}

namespace {

// Strips of width 2 across the `strip` coordinate (0 = a, 1 = b). Succeeds when
// all squares share one parity in the strip coordinate and each strip is a
// full stack of squares with a single parity in the other coordinate.
std::optional<std::pair<int, std::vector<int>>> strip_parities(const Packing2D& p, int strip) {
  const int across = strip == 0 ? p.La : p.Lb;
  const int along = strip == 0 ? p.Lb : p.La;
  if (p.squares.empty()) return std::nullopt;
  auto coord = [&](const SquareAnchor& s, int which) { return which == 0 ? s.a : s.b; };
  const int base = coord(p.squares.front(), strip) & 1;
  std::map<int, std::set<int>> members;
  for (const auto& s : p.squares) {
    if ((coord(s, strip) & 1) != base) return std::nullopt;
    members[coord(s, strip)].insert(coord(s, 1 - strip));
  }
  std::vector<int> parities;
  for (int k = 0; k < across / 2; ++k) {
    const auto it = members.find(base + 2 * k);
    if (it == members.end() || static_cast<int>(it->second.size()) != along / 2) return std::nullopt;
    const int par = *it->second.begin() & 1;
    for (int x : it->second)
      if ((x & 1) != par) return std::nullopt;
    parities.push_back(par);
  }
  return std::make_pair(base, parities);
}

}  // namespace

PackingClass classify_2d_packing(const Packing2D& p) {
  PackingClass out;
  if (!is_perfect_packing(p)) return out;
  const auto columns = strip_parities(p, 0);
  const auto rows = strip_parities(p, 1);
  auto finish = [&](ShiftKind kind, int a_par, int b_par, const std::vector<int>& par) {
    out.classified = true;
    out.kind = kind;
    out.base = 2 * a_par + b_par;
    out.shifts.clear();
    for (int t : par) out.shifts.push_back(t ^ par.front());
    if (std::all_of(out.shifts.begin(), out.shifts.end(), [](int s) { return s == 0; }))
      out.kind = ShiftKind::None;
  };
  if (columns) {
    finish(ShiftKind::Column, columns->first, columns->second.front(), columns->second);
  } else if (rows) {
    finish(ShiftKind::Row, rows->second.front(), rows->first, rows->second);
  }
  return out;
}

Packing2D packing_from_witness(int La, int Lb, const PackingClass& c) {
  require_extents(La, Lb);
  if (!c.classified || c.base < 0 || c.base > 3)
    throw Error(ErrorKind::InvalidArgument, "witness is not a classification");
  const int a0 = c.base >> 1, b0 = c.base & 1;
  Packing2D p{La, Lb, {}};
  const bool by_rows = c.kind == ShiftKind::Row;
  const int strips = by_rows ? Lb / 2 : La / 2;
  const int along = by_rows ? La : Lb;
  for (int s = 0; s < strips; ++s) {
    const int shift = (c.kind == ShiftKind::None || c.shifts.empty()) ? 0 : c.shifts.at(s);
    for (int t = 0; t < along / 2; ++t) {
      if (by_rows) p.squares.push_back({wrap(a0 + shift + 2 * t, La), b0 + 2 * s});
      else p.squares.push_back({a0 + 2 * s, wrap(b0 + shift + 2 * t, Lb)});
    }
  }
  std::sort(p.squares.begin(), p.squares.end());
  return p;
}

std::string packing_ascii(const Packing2D& p) {
  std::vector<char> grid(static_cast<std::size_t>(p.La) * p.Lb, '.');
  for (std::size_t k = 0; k < p.squares.size(); ++k) {
    const char label = static_cast<char>('A' + k % 26);
    const auto& s = p.squares[k];
    for (int da = 0; da < 2; ++da)
      for (int db = 0; db < 2; ++db) grid[wrap(s.a + da, p.La) + p.La * wrap(s.b + db, p.Lb)] = label;
  }
  std::string out;
  for (int b = 0; b < p.Lb; ++b) {
    out.append(grid.begin() + b * p.La, grid.begin() + (b + 1) * p.La);
    out.push_back('\n');
  }
  return out;
}

const char* to_string(ShiftKind k) {
  switch (k) {
    case ShiftKind::None: return "none";
    case ShiftKind::Column: return "column";
    case ShiftKind::Row: return "row";
  }
  return "?";
}

}  // namespace flatband
