#pragma once

// Abstract simplicial complexes on [m] = {1, ..., m}, stored by maximal faces.
// Indices are 1-based throughout. Vertices lying in no face are ghosts.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mamlab/error.hpp"

namespace mamlab {

/// Sorted, duplicate-free list of 1-based vertex indices.
using Face = std::vector<int>;

inline Face make_face(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool is_subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Face face_union(const Face& a, const Face& b) {
  Face out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Face face_intersection(const Face& a, const Face& b) {
  Face out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Face face_difference(const Face& a, const Face& b) {
  Face out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Face full_range(int m) {
  Face f(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) f[static_cast<std::size_t>(i)] = i + 1;
  return f;
}

inline std::string face_text(const Face& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "}";
}

/// All subsets of `ground`, ordered by size and then lexicographically.
inline std::vector<Face> all_subsets(const Face& ground) {
  if (ground.size() > 24) throw InputError("ground set too large to enumerate subsets");
  std::vector<Face> out;
  const std::uint32_t total = std::uint32_t(1) << ground.size();
  out.reserve(total);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    Face f;
    for (std::size_t k = 0; k < ground.size(); ++k)
      if (mask >> k & 1) f.push_back(ground[k]);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Non-maximal and duplicate entries are discarded; an empty list (or a
  /// list of empty faces) gives K = {∅}.
  SimplicialComplex(int m, std::vector<Face> faces) : m_(m) {
    if (m < 0) throw InputError("negative ground-set size");
    for (auto& f : faces) {
      f = make_face(std::move(f));
      for (int v : f)
        if (v < 1 || v > m) throw InputError("vertex " + std::to_string(v) + " out of range [1," + std::to_string(m) + "]");
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    for (auto& f : faces) {
      if (f.empty()) continue;
      bool covered = false;
      for (const auto& g : maximal_)
        if (is_subset(f, g)) covered = true;
      if (!covered) maximal_.push_back(std::move(f));
    }
    std::sort(maximal_.begin(), maximal_.end());
  }

  int m() const { return m_; }
  /// Maximal faces in lexicographic order; empty when K = {∅}.
  const std::vector<Face>& maximal_faces() const { return maximal_; }
  /// Maximal faces with the convention that K = {∅} has the single maximal face ∅.
  std::vector<Face> facets() const { return maximal_.empty() ? std::vector<Face>{Face{}} : maximal_; }

  bool is_face(const Face& f) const {
    for (int v : f)
      if (v < 1 || v > m_) throw InputError("vertex " + std::to_string(v) + " out of range");
    if (f.empty()) return true;
    const Face g = make_face(f);
    return std::any_of(maximal_.begin(), maximal_.end(), [&](const Face& mx) { return is_subset(g, mx); });
  }

  Face vertices() const {
    std::set<int> s;
    for (const auto& f : maximal_) s.insert(f.begin(), f.end());
    return Face(s.begin(), s.end());
  }
  Face ghosts() const { return face_difference(full_range(m_), vertices()); }

  /// Largest face size (0 for {∅}).
  std::size_t max_face_size() const {
    std::size_t d = 0;
    for (const auto& f : maximal_) d = std::max(d, f.size());
    return d;
  }

  /// Every face including ∅, ordered by size then lexicographically.
  std::vector<Face> faces() const {
    std::set<Face> all{Face{}};
    for (const auto& f : maximal_)
      for (auto& s : all_subsets(f)) all.insert(std::move(s));
    std::vector<Face> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }
  std::size_t face_count() const { return faces().size(); }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.m_ == b.m_ && a.maximal_ == b.maximal_;
  }

 private:
  int m_ = 0;
  std::vector<Face> maximal_;
};

/// K_J = {I ∈ K : I ⊂ J}, on the same ground set.
inline SimplicialComplex full_subcomplex(const SimplicialComplex& k, const Face& j) {
  for (int v : j)
    if (v < 1 || v > k.m()) throw InputError("vertex " + std::to_string(v) + " out of range");
  const Face js = make_face(j);
  std::vector<Face> faces;
  for (const auto& f : k.maximal_faces()) faces.push_back(face_intersection(f, js));
  return SimplicialComplex(k.m(), std::move(faces));
}

/// lk_K I = {J ∈ K : J ∩ I = ∅, J ∪ I ∈ K}.
inline SimplicialComplex link(const SimplicialComplex& k, const Face& i) {
  if (!k.is_face(i)) throw DomainError(face_text(i) + " is not a face");
  const Face is = make_face(i);
  std::vector<Face> faces;
  for (const auto& f : k.maximal_faces())
    if (is_subset(is, f)) faces.push_back(face_difference(f, is));
  return SimplicialComplex(k.m(), std::move(faces));
}

/// K_P from the facet sets of the vertices of a polytope with m facets.
inline SimplicialComplex nerve_complex(const std::vector<Face>& incidences, int m) {
  if (incidences.empty()) throw InputError("empty incidence list");
  return SimplicialComplex(m, incidences);
}

/// Boundary of the simplex on {1, ..., q+1}; vertices q+2..m are ghosts.
inline SimplicialComplex boundary_of_simplex(int q, int m) {
  if (q < 0 || q >= m) throw InputError("boundary_of_simplex needs 0 <= q < m");
  std::vector<Face> faces;
  for (int skip = 1; skip <= q + 1; ++skip) {
    Face f;
    for (int v = 1; v <= q + 1; ++v)
      if (v != skip) f.push_back(v);
    faces.push_back(std::move(f));
  }
  return SimplicialComplex(m, std::move(faces));
}

/// Boundary of the simplex on the given vertex set, on ground set [m].
inline SimplicialComplex boundary_simplex_on(const Face& vertices, int m) {
  std::vector<Face> faces;
  for (std::size_t skip = 0; skip < vertices.size(); ++skip) {
    Face f;
    for (std::size_t k = 0; k < vertices.size(); ++k)
      if (k != skip) f.push_back(vertices[k]);
    faces.push_back(std::move(f));
  }
  return SimplicialComplex(m, std::move(faces));
}

inline SimplicialComplex empty_complex(int m) { return SimplicialComplex(m, {}); }

/// K1 * K2 on [m1 + m2], with K2 shifted by m1.
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<Face> faces;
  for (const auto& f : a.facets())
    for (const auto& g : b.facets()) {
      Face h = f;
      for (int v : g) h.push_back(v + a.m());
      faces.push_back(std::move(h));
    }
  return SimplicialComplex(a.m() + b.m(), std::move(faces));
}

}  // namespace mamlab
