#pragma once

// Unimodular normal forms of centrally symmetric lattice polytopes and an
// exhaustive, resumable search over those with vertices in a box.

#include "latnum/exact.hpp"
#include "latnum/polytope.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latnum {

/**
 * Normal form under GL_n(Z). Rows of `matrix`: (d, 0, ..., 0) with d the
 * minimal |det| of a vertex basis, then the Hermite form of the lattice Z^n
 * in scaled basis coordinates, then the sorted vertices in those coordinates.
 */
struct CanonicalForm {
  std::size_t dim = 0;
  IntMatrix matrix{1, 1};
  std::string hash;  // SHA-256 of the matrix, hex

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.dim == b.dim && a.matrix == b.matrix;
  }
};

/// Throws std::invalid_argument unless p is a full-dimensional, centrally symmetric lattice polytope.
CanonicalForm canonical_form(const VPolytope& p);

/// "square", "diamond", "hexagon", "cube3", "cross3" or "" for other classes.
std::string class_name(const CanonicalForm& form);

std::string sha256_hex(const std::string& data);

struct SearchOptions {
  unsigned dim = 2;
  unsigned bound = 1;
  std::optional<long> interior_filter;
};

struct ClassRecord {
  CanonicalForm form;
  std::vector<IntVector> vertices;  // first representative found
  Integer total;
  Integer interior;
  Rational value;  // Lambda(K) vol(K*)
  std::string name;
};

struct SearchCounters {
  std::uint64_t nodes = 0;               // vertex sets in convex position visited
  std::uint64_t full_dimensional = 0;
  std::uint64_t filtered_out = 0;        // interior count differs from the filter
  std::uint64_t skipped_no_interior_origin = 0;
};

/**
 * Depth-first enumeration over sets of symmetric vertex pairs {+-p}, with p
 * ranging over box points whose first nonzero coordinate is positive. Only
 * sets in convex position are extended, which is exact since subsets of
 * such sets stay in convex position. The cursor is the current set.
 */
struct SearchState {
  static constexpr int schema_version = 1;

  SearchOptions options;
  std::vector<std::size_t> cursor;
  bool started = false;
  bool finished = false;
  SearchCounters counters;
  std::vector<ClassRecord> classes;  // discovery order
};

/// Validates the cost guard (dim 2 with bound <= 4, dim 3 with bound <= 3).
SearchState start_search(const SearchOptions& options);

/// Processes up to max_nodes further nodes; returns whether the search is complete.
bool run_search(SearchState& state, std::optional<std::uint64_t> max_nodes = std::nullopt);

std::string checkpoint_text(const SearchState& state);
/// Throws std::runtime_error on schema mismatch, digest mismatch or malformed content.
SearchState parse_checkpoint(const std::string& text);
void save_checkpoint(const SearchState& state, const std::string& path);
SearchState load_checkpoint(const std::string& path);

/// Value descending, then hash ascending.
std::vector<ClassRecord> rank_classes(std::vector<ClassRecord> classes);

std::vector<ClassRecord> enumerate_cs_polytopes(unsigned dim, unsigned bound,
                                                std::optional<long> interior_filter = std::nullopt);

/// Ranked classes; with a checkpoint path, progress is saved every `save_every` nodes and resumed if present.
std::vector<ClassRecord> maximize_gs_product(unsigned dim, unsigned bound,
                                             const std::optional<std::string>& checkpoint = std::nullopt,
                                             std::uint64_t save_every = 500);

}  // namespace latnum
