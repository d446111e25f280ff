#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qecgrow/pauli.hpp"

namespace qecgrow {

/// Doubled lattice coordinates: data qubits of a rotated code of distance d
/// sit at (2i, 2j) with 0 <= i,j < d; +x is east, +y is north.
struct Coord {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
  Coord operator+(Coord o) const { return {x + o.x, y + o.y}; }
  Coord operator-(Coord o) const { return {x - o.x, y - o.y}; }
  Coord operator*(int s) const { return {x * s, y * s}; }
};

enum class FaceKind : std::uint8_t { X, Z };

struct Face {
  Coord center;
  FaceKind kind;
  std::vector<Coord> support;  // size 2, 3 or 4, sorted by (y, x)
};

enum class LayoutVariant : std::uint8_t { rotated, regular };

/// Geometry + stabilizer generators + logical operators of a surface code.
/// Immutable after construction.
struct CodeLayout {
  LayoutVariant variant = LayoutVariant::rotated;
  int d = 0;
  std::vector<Coord> data_qubits;        // sorted by (y, x)
  std::map<Coord, std::uint32_t> index;  // coord -> position in data_qubits
  std::vector<Face> x_faces, z_faces;
  std::vector<std::uint32_t> logical_x;  // X_L support (horizontal, bottom)
  std::vector<std::uint32_t> logical_z;  // Z_L support (vertical, right)

  std::size_t num_qubits() const { return data_qubits.size(); }

  std::vector<const Face*> all_faces() const {
    std::vector<const Face*> fs;
    fs.reserve(x_faces.size() + z_faces.size());
    for (const auto& f : x_faces) fs.push_back(&f);
    for (const auto& f : z_faces) fs.push_back(&f);
    return fs;
  }

  PauliString face_pauli(const Face& f) const {
    PauliString p(num_qubits());
    char letter = f.kind == FaceKind::X ? 'X' : 'Z';
    for (const auto& c : f.support) p.set_pauli(index.at(c), letter);
    return p;
  }

  PauliString logical_x_pauli() const { return string_on(logical_x, 'X'); }
  PauliString logical_z_pauli() const { return string_on(logical_z, 'Z'); }

  /// Y_L = X_L * Z_L up to phase, normalized to the Hermitian +1 form.
  PauliString logical_y_pauli() const {
    PauliString p = logical_x_pauli() * logical_z_pauli();
    p.set_phase(static_cast<unsigned>(p.xz_count()) & 3u);
    return p;
  }

 private:
  PauliString string_on(const std::vector<std::uint32_t>& qs, char c) const {
    PauliString p(num_qubits());
    for (auto q : qs) p.set_pauli(q, c);
    return p;
  }
};

namespace detail {

inline void sort_support(std::vector<Coord>& s) {
  std::sort(s.begin(), s.end(),
            [](Coord a, Coord b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
}

inline void finish_layout(CodeLayout& L) {
  std::sort(L.data_qubits.begin(), L.data_qubits.end(),
            [](Coord a, Coord b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
  for (std::uint32_t i = 0; i < L.data_qubits.size(); ++i)
    L.index[L.data_qubits[i]] = i;
  auto face_less = [](const Face& a, const Face& b) {
    return std::tie(a.center.y, a.center.x) < std::tie(b.center.y, b.center.x);
  };
  std::sort(L.x_faces.begin(), L.x_faces.end(), face_less);
  std::sort(L.z_faces.begin(), L.z_faces.end(), face_less);
}

}  // namespace detail

/// Face kind of a rotated-code bulk center (2a+1, 2b+1): X-type iff a+b odd,
/// equivalently (x+y) % 4 == 0. Extending the same formula past the lattice
/// edge fixes which boundary slots carry faces.
inline FaceKind rotated_face_kind(Coord center) {
  return ((center.x + center.y) % 4 + 4) % 4 == 0 ? FaceKind::X : FaceKind::Z;
}

/// Face kind of a regular-code face center (i+j odd): X-type iff i even.
inline FaceKind regular_face_kind(Coord center) {
  return center.x % 2 == 0 ? FaceKind::X : FaceKind::Z;
}

inline CodeLayout rotated_layout(int d) {
  if (d < 1 || d % 2 == 0)
    throw std::invalid_argument("rotated_layout: d must be odd and >= 1");
  CodeLayout L;
  L.variant = LayoutVariant::rotated;
  L.d = d;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) L.data_qubits.push_back({2 * i, 2 * j});

  // Bulk weight-4 faces.
  for (int a = 0; a + 1 < d; ++a) {
    for (int b = 0; b + 1 < d; ++b) {
      Coord c{2 * a + 1, 2 * b + 1};
      Face f{c, rotated_face_kind(c),
             {{c.x - 1, c.y - 1}, {c.x + 1, c.y - 1}, {c.x - 1, c.y + 1},
              {c.x + 1, c.y + 1}}};
      detail::sort_support(f.support);
      (f.kind == FaceKind::X ? L.x_faces : L.z_faces).push_back(std::move(f));
    }
  }
  // Boundary weight-2 faces. A slot exists where the checkerboard formula,
  // extended one step past the edge, names the side's type: Z on the
  // south/north edges, X on the west/east edges. Centers are stored at the
  // edge midpoint to keep coordinates non-negative.
  int top = 2 * d - 2;
  for (int a = 0; a + 1 < d; ++a) {
    if (rotated_face_kind({2 * a + 1, -1}) == FaceKind::Z) {
      Face f{{2 * a + 1, 0}, FaceKind::Z, {{2 * a, 0}, {2 * a + 2, 0}}};
      L.z_faces.push_back(std::move(f));
    }
    if (rotated_face_kind({2 * a + 1, top + 1}) == FaceKind::Z) {
      Face f{{2 * a + 1, top}, FaceKind::Z, {{2 * a, top}, {2 * a + 2, top}}};
      L.z_faces.push_back(std::move(f));
    }
  }
  for (int b = 0; b + 1 < d; ++b) {
    if (rotated_face_kind({-1, 2 * b + 1}) == FaceKind::X) {
      Face f{{0, 2 * b + 1}, FaceKind::X, {{0, 2 * b}, {0, 2 * b + 2}}};
      L.x_faces.push_back(std::move(f));
    }
    if (rotated_face_kind({top + 1, 2 * b + 1}) == FaceKind::X) {
      Face f{{top, 2 * b + 1}, FaceKind::X, {{top, 2 * b}, {top, 2 * b + 2}}};
      L.x_faces.push_back(std::move(f));
    }
  }

  detail::finish_layout(L);
  for (int i = 0; i < d; ++i) {
    L.logical_x.push_back(L.index.at({2 * i, 0}));        // bottom row
    L.logical_z.push_back(L.index.at({top, 2 * i}));      // right column
  }
  return L;
}

inline CodeLayout regular_layout(int d) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("regular_layout: d must be odd and >= 3");
  CodeLayout L;
  L.variant = LayoutVariant::regular;
  L.d = d;
  int top = 2 * d - 2;
  for (int j = 0; j <= top; ++j)
    for (int i = 0; i <= top; ++i)
      if ((i + j) % 2 == 0) L.data_qubits.push_back({i, j});

  auto in_range = [top](Coord c) {
    return c.x >= 0 && c.x <= top && c.y >= 0 && c.y <= top;
  };
  for (int i = 0; i <= top; ++i) {
    for (int j = 0; j <= top; ++j) {
      if ((i + j) % 2 == 0) continue;
      Coord c{i, j};
      Face f{c, regular_face_kind(c), {}};
      for (Coord nb : {Coord{i - 1, j}, Coord{i + 1, j}, Coord{i, j - 1},
                       Coord{i, j + 1}})
        if (in_range(nb)) f.support.push_back(nb);
      detail::sort_support(f.support);
      (f.kind == FaceKind::X ? L.x_faces : L.z_faces).push_back(std::move(f));
    }
  }

  detail::finish_layout(L);
  for (int i = 0; i < d; ++i) {
    L.logical_x.push_back(L.index.at({2 * i, 0}));
    L.logical_z.push_back(L.index.at({top, 2 * i}));
  }
  return L;
}

/// Coordinate embedding for one growth stage: rotated d -> regular d is the
/// identity, regular d -> rotated 2d-1 doubles coordinates (the unit-grid
/// vertices of reg d become the even-even sites of the canonical rot 2d-1
/// frame).
inline std::map<Coord, Coord> embedding_map(const CodeLayout& from,
                                            const CodeLayout& to) {
  std::map<Coord, Coord> m;
  if (from.variant == LayoutVariant::rotated &&
      to.variant == LayoutVariant::regular && from.d == to.d) {
    for (const auto& c : from.data_qubits) {
      if (!to.index.count(c))
        throw std::logic_error("embedding_map: missing vertex");
      m[c] = c;
    }
    return m;
  }
  if (from.variant == LayoutVariant::regular &&
      to.variant == LayoutVariant::rotated && to.d == 2 * from.d - 1) {
    for (const auto& c : from.data_qubits) {
      Coord img{2 * c.x, 2 * c.y};
      if (!to.index.count(img))
        throw std::logic_error("embedding_map: image not a data qubit");
      m[c] = img;
    }
    return m;
  }
  throw std::invalid_argument(
      "embedding_map: supported pairs are rot d -> reg d and reg d -> rot "
      "2d-1");
}

/// Which single-qubit preparation carries the logical information.
enum class LogicalState : std::uint8_t { zero, plus, plus_i, magic_T };

inline const char* to_string(LogicalState s) {
  switch (s) {
    case LogicalState::zero: return "zero";
    case LogicalState::plus: return "plus";
    case LogicalState::plus_i: return "plus_i";
    case LogicalState::magic_T: return "magic_T";
  }
  return "?";
}

}  // namespace qecgrow
