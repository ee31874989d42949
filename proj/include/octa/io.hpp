#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "octa/coloring.hpp"
#include "octa/octahedral.hpp"

namespace octa {

/// Whole file, or standard input for "-". Throws InputError.
std::string read_text(const std::string& path);

/// Arc matrices (indexed by arc) and decoration choices (by component).
struct RepresentationInput {
  std::vector<Mat2> arc_matrices;
  std::vector<LineChoice> choices;
};

/// Representation file; arcs and components are named by any member
/// segment label.
RepresentationInput parse_representation(std::string_view text, const Diagram& d,
                                         const Combinatorics& c);
std::string write_representation(const Diagram& d, const Combinatorics& c,
                                 const RepresentationInput& rep);

OctahedralColoring parse_octahedral(std::string_view text, const Diagram& d);
std::string write_octahedral(const Diagram& d, const OctahedralColoring& chi);

/// {"beta": [{"segment": id, "value": z}, ...]}, every segment once.
std::vector<Complex> parse_beta(std::string_view text, const Diagram& d);
std::string write_beta(const Diagram& d, const std::vector<Complex>& beta);

/// {"starts": [<beta document>, ...]}.
std::vector<std::vector<Complex>> parse_starts(std::string_view text, const Diagram& d);

/// Comma-separated complex numbers "re" or "re:im"; a single value is
/// broadcast to every component.
std::vector<Complex> parse_mu_list(const std::string& text, int components);

/// Four comma-separated reals "re1,im1,re2,im2".
ColVec parse_column(const std::string& text);

}  // namespace octa
