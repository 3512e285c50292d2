#pragma once

// Polytope interchange format, built-in named bodies and random corpora.

#include "latnum/polytope.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace latnum {

/**
 * Parses {"dim": n, "vertices": [[x, ...], ...]} where each coordinate is an
 * integer, a "p/q" string or a [num, den] pair. The hull of the listed points
 * is returned. Throws std::invalid_argument on malformed input.
 */
VPolytope parse_polytope_json(const std::string& text);

/// Vertices as "p/q" strings.
std::string polytope_json(const VPolytope& p);

/// @hexagon, @cube:n, @cross:n:l, @diamond:n.
VPolytope named_body(const std::string& name);

/// A name starting with '@' is a built-in body, anything else a JSON file path.
VPolytope load_body(const std::string& spec);

/// Built-in bodies used by batch verification.
std::vector<std::string> builtin_corpus();

/**
 * Hull of k random pairs +-p with p in [-coord, coord]^dim \ {0}, k drawn
 * from [dim, dim + 3]; redrawn until full-dimensional.
 */
VPolytope random_symmetric_polytope(std::mt19937_64& rng, std::size_t dim, long coord);

/// n random lattice vectors in [-coord, coord]^n forming a basis of R^n.
std::vector<IntVector> random_independent_vectors(std::mt19937_64& rng, std::size_t n, long coord);

}  // namespace latnum
