#include "octa/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

namespace octa {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + " syntax error at byte " + std::to_string(e.byte));
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw InputError(where + ": unknown field '" + key + "'");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

Complex to_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError(where + ": expected a complex number [re, im]");
}

json from_complex(Complex z) { return json::array({z.real(), z.imag()}); }

int segment_of(const json& v, const Diagram& d, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": segment id must be an integer");
  return d.index_of(v.get<long>());
}

Mat2 to_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_array() || v[0].size() != 2 ||
      !v[1].is_array() || v[1].size() != 2) {
    throw InputError(where + ": expected a 2x2 matrix [[a, b], [c, d]]");
  }
  return {to_complex(v[0][0], where), to_complex(v[0][1], where), to_complex(v[1][0], where),
          to_complex(v[1][1], where)};
}

json from_matrix(const Mat2& g) {
  return json::array({json::array({from_complex(g.a), from_complex(g.b)}),
                      json::array({from_complex(g.c), from_complex(g.d)})});
}

Complex parse_complex_token(const std::string& tok) {
  std::size_t used = 0;
  try {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) {
      const double re = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return re;
    }
    const std::string a = tok.substr(0, colon), b = tok.substr(colon + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(tok);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(tok);
    return {re, im};
  } catch (const std::logic_error&) {
    throw InputError("not a number: '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RepresentationInput parse_representation(std::string_view text, const Diagram& d,
                                         const Combinatorics& c) {
  const json doc = parse_json(text, "representation");
  reject_unknown(doc, {"arcs", "decorations"}, "representation");
  RepresentationInput rep;
  rep.arc_matrices.assign(c.num_arcs, Mat2{});
  std::vector<bool> given(c.num_arcs, false);
  const json& arcs = field(doc, "arcs", "representation");
  if (!arcs.is_array()) throw InputError("arcs: expected a list");
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const std::string where = "arcs[" + std::to_string(k) + "]";
    reject_unknown(arcs[k], {"arc", "matrix"}, where);
    const int arc = c.arc_of[segment_of(field(arcs[k], "arc", where), d, where + ".arc")];
    if (given[arc]) throw InputError(where + ": arc given twice");
    given[arc] = true;
    rep.arc_matrices[arc] = to_matrix(field(arcs[k], "matrix", where), where + ".matrix");
  }
  for (int a = 0; a < c.num_arcs; ++a) {
    if (!given[a]) {
      throw InputError("no matrix for the arc of segment " +
                       std::to_string(d.label(c.arc_segments[a].front())));
    }
  }
  rep.choices.assign(c.num_components, LineChoice{});
  if (doc.contains("decorations")) {
    const json& decs = doc.at("decorations");
    if (!decs.is_array()) throw InputError("decorations: expected a list");
    for (std::size_t k = 0; k < decs.size(); ++k) {
      const std::string where = "decorations[" + std::to_string(k) + "]";
      reject_unknown(decs[k], {"component", "decoration"}, where);
      const int comp =
          c.component_of[segment_of(field(decs[k], "component", where), d, where + ".component")];
      const json& dec = field(decs[k], "decoration", where);
      if (dec.is_number_integer()) {
        rep.choices[comp].index = dec.get<int>();
      } else if (dec.is_array() && dec.size() == 2) {
        rep.choices[comp].line = RowVec{to_complex(dec[0], where), to_complex(dec[1], where)};
      } else {
        throw InputError(where + ".decoration: expected an index or a row vector [v1, v2]");
      }
    }
  }
  return rep;
}

std::string write_representation(const Diagram& d, const Combinatorics& c,
                                 const RepresentationInput& rep) {
  json doc;
  doc["arcs"] = json::array();
  for (int a = 0; a < c.num_arcs; ++a) {
    doc["arcs"].push_back(
        {{"arc", d.label(c.arc_segments[a].front())}, {"matrix", from_matrix(rep.arc_matrices[a])}});
  }
  json decs = json::array();
  for (int k = 0; k < static_cast<int>(rep.choices.size()); ++k) {
    const LineChoice& ch = rep.choices[k];
    if (!ch.index && !ch.line) continue;
    json entry{{"component", d.label(c.component_sequence[k].front())}};
    if (ch.line) {
      entry["decoration"] = json::array({from_complex(ch.line->x), from_complex(ch.line->y)});
    } else {
      entry["decoration"] = *ch.index;
    }
    decs.push_back(entry);
  }
  if (!decs.empty()) doc["decorations"] = decs;
  return doc.dump(2) + "\n";
}

OctahedralColoring parse_octahedral(std::string_view text, const Diagram& d) {
  const json doc = parse_json(text, "octahedral coloring");
  reject_unknown(doc, {"segments"}, "octahedral coloring");
  const json& segs = field(doc, "segments", "octahedral coloring");
  if (!segs.is_array()) throw InputError("segments: expected a list");
  OctahedralColoring chi;
  chi.chi.resize(d.num_segments());
  std::vector<bool> given(d.num_segments(), false);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const std::string where = "segments[" + std::to_string(k) + "]";
    reject_unknown(segs[k], {"segment", "a", "b", "m"}, where);
    const int s = segment_of(field(segs[k], "segment", where), d, where + ".segment");
    if (given[s]) throw InputError(where + ": segment given twice");
    given[s] = true;
    chi.chi[s] = {to_complex(field(segs[k], "a", where), where + ".a"),
                  to_complex(field(segs[k], "b", where), where + ".b"),
                  to_complex(field(segs[k], "m", where), where + ".m")};
    if (chi.chi[s].a == 0.0 || chi.chi[s].b == 0.0 || chi.chi[s].m == 0.0) {
      throw InputError(where + ": octahedral color components must be nonzero");
    }
  }
  for (int s = 0; s < d.num_segments(); ++s) {
    if (!given[s]) throw InputError("no color for segment " + std::to_string(d.label(s)));
  }
  return chi;
}

std::string write_octahedral(const Diagram& d, const OctahedralColoring& chi) {
  json doc;
  doc["segments"] = json::array();
  for (int s = 0; s < d.num_segments(); ++s) {
    const OctaColor& x = chi.chi[s];
    doc["segments"].push_back({{"segment", d.label(s)},
                               {"a", from_complex(x.a)},
                               {"b", from_complex(x.b)},
                               {"m", from_complex(x.m)}});
  }
  return doc.dump(2) + "\n";
}

namespace {

std::vector<Complex> beta_from(const json& doc, const Diagram& d, const std::string& where) {
  reject_unknown(doc, {"beta"}, where);
  const json& list = field(doc, "beta", where);
  if (!list.is_array()) throw InputError(where + ".beta: expected a list");
  std::vector<Complex> beta(d.num_segments());
  std::vector<bool> given(d.num_segments(), false);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string w = where + ".beta[" + std::to_string(k) + "]";
    reject_unknown(list[k], {"segment", "value"}, w);
    const int s = segment_of(field(list[k], "segment", w), d, w + ".segment");
    if (given[s]) throw InputError(w + ": segment given twice");
    given[s] = true;
    beta[s] = to_complex(field(list[k], "value", w), w + ".value");
  }
  for (int s = 0; s < d.num_segments(); ++s) {
    if (!given[s]) throw InputError(where + ": no beta for segment " + std::to_string(d.label(s)));
  }
  return beta;
}

}  // namespace

std::vector<Complex> parse_beta(std::string_view text, const Diagram& d) {
  return beta_from(parse_json(text, "beta"), d, "beta file");
}

std::string write_beta(const Diagram& d, const std::vector<Complex>& beta) {
  json doc;
  doc["beta"] = json::array();
  for (int s = 0; s < d.num_segments(); ++s) {
    doc["beta"].push_back({{"segment", d.label(s)}, {"value", from_complex(beta[s])}});
  }
  return doc.dump(2) + "\n";
}

std::vector<std::vector<Complex>> parse_starts(std::string_view text, const Diagram& d) {
  const json doc = parse_json(text, "starts");
  reject_unknown(doc, {"starts"}, "starts file");
  const json& list = field(doc, "starts", "starts file");
  if (!list.is_array()) throw InputError("starts: expected a list");
  std::vector<std::vector<Complex>> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    out.push_back(beta_from(list[k], d, "starts[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<Complex> parse_mu_list(const std::string& text, int components) {
  std::vector<Complex> mu;
  for (const std::string& tok : split(text, ',')) mu.push_back(parse_complex_token(tok));
  if (mu.size() == 1) mu.assign(components, mu.front());
  if (static_cast<int>(mu.size()) != components) {
    throw InputError("--mu needs 1 or " + std::to_string(components) + " values");
  }
  return mu;
}

ColVec parse_column(const std::string& text) {
  const std::vector<std::string> toks = split(text, ',');
  if (toks.size() != 4) throw InputError("expected four comma-separated reals re1,im1,re2,im2");
  double v[4];
  for (int k = 0; k < 4; ++k) v[k] = parse_complex_token(toks[k]).real();
  const ColVec u{{v[0], v[1]}, {v[2], v[3]}};
  if (u.norm() == 0.0) throw InputError("vector must be nonzero");
  return u;
}

}  // namespace octa
