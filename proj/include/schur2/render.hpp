#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "schur2/linkage.hpp"
#include "schur2/verify.hpp"

namespace schur2 {

enum class Style { Figure, Csv, Json };

inline Style style_from_string(const std::string& s) {
  if (s == "figure") return Style::Figure;
  if (s == "csv") return Style::Csv;
  if (s == "json") return Style::Json;
  throw std::invalid_argument("unknown style: " + s);
}

struct RenderOptions {
  Style style = Style::Figure;
  Weight group = 0;  // separator period; 0 means p
  std::string zero_glyph = ".";
  std::string one_glyph = "1";
  bool absolute = false;  // label rows/columns by absolute weights
};

namespace detail {

inline std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::vector<std::string> row_labels(const BlockSpec& spec,
                                           const RenderOptions& opt) {
  std::vector<std::string> out;
  out.reserve(spec.size);
  for (Weight m = 0; m < spec.size; ++m)
    out.push_back(std::to_string(opt.absolute ? spec.weight_of_index(m) : m));
  return out;
}

/// Lower-triangular figure text: one glyph column per block index up to
/// the diagonal, dots for zeros, group separators every `group` rows and
/// columns, matching the published layout.
inline std::string figure_text(const MultiplicityMatrix& M, const BlockSpec& spec,
                               const RenderOptions& opt) {
  Weight group = opt.group == 0 ? spec.p : opt.group;
  auto labels = row_labels(spec, opt);
  std::size_t lw = 0;
  for (const auto& l : labels) lw = std::max(lw, l.size());
  std::size_t gw = std::max(opt.zero_glyph.size(), opt.one_glyph.size());
  auto glyph = [&](bool one) {
    const std::string& g = one ? opt.one_glyph : opt.zero_glyph;
    return std::string(gw - g.size(), ' ') + g;
  };

  std::string out;
  std::string rule;  // computed lazily from the widest line
  std::size_t width = 0;
  std::vector<std::string> lines;
  for (Weight m = 0; m < M.size; ++m) {
    std::string line = pad_left(labels[m], lw) + " |";
    for (Weight n = 0; n <= m; ++n) {
      if (n > 0 && n % group == 0) line += " |";
      line += " " + glyph(M.entry(m, n));
    }
    width = std::max(width, line.size());
    lines.push_back(std::move(line));
  }
  for (Weight m = 0; m < M.size; ++m) {
    if (m > 0 && m % group == 0) {
      if (rule.empty()) {
        rule = std::string(width, '-');
        rule[lw + 1] = '+';
      }
      out += rule + "\n";
    }
    out += lines[m] + "\n";
  }
  return out;
}

inline std::string figure_text(const IntMatrix& M, const BlockSpec& spec,
                               const RenderOptions& opt) {
  Weight group = opt.group == 0 ? spec.p : opt.group;
  auto labels = row_labels(spec, opt);
  std::size_t lw = 0;
  for (const auto& l : labels) lw = std::max(lw, l.size());
  std::size_t gw = opt.zero_glyph.size();
  for (auto v : M.data) gw = std::max(gw, std::to_string(v).size());

  std::string out;
  std::size_t width = 0;
  std::vector<std::string> lines;
  for (Weight m = 0; m < M.size; ++m) {
    std::string line = pad_left(labels[m], lw) + " |";
    for (Weight n = 0; n < M.size; ++n) {
      if (n > 0 && n % group == 0) line += " |";
      std::uint64_t v = M.at(m, n);
      line += " " + pad_left(v == 0 ? opt.zero_glyph : std::to_string(v), gw);
    }
    width = std::max(width, line.size());
    lines.push_back(std::move(line));
  }
  std::string rule;
  for (Weight m = 0; m < M.size; ++m) {
    if (m > 0 && m % group == 0) {
      if (rule.empty()) {
        rule = std::string(width, '-');
        rule[lw + 1] = '+';
      }
      out += rule + "\n";
    }
    out += lines[m] + "\n";
  }
  return out;
}

inline std::string csv_header(const BlockSpec& spec, const RenderOptions& opt) {
  std::string out = "m";
  for (Weight n = 0; n < spec.size; ++n)
    out += "," + std::to_string(opt.absolute ? spec.weight_of_index(n) : n);
  return out + "\n";
}

}  // namespace detail

inline nlohmann::json spec_to_json(const BlockSpec& spec) {
  return nlohmann::json{{"variant", to_string(spec.variant)},
                        {"p", spec.p},
                        {"ell", spec.period()},
                        {"lowest", spec.lowest},
                        {"size", spec.size}};
}

inline BlockSpec spec_from_json(const nlohmann::json& j) {
  std::string variant = j.at("variant").get<std::string>();
  if (variant == "classical")
    return BlockSpec::classical(j.at("p").get<Weight>(),
                                j.at("lowest").get<Weight>(),
                                j.at("size").get<Weight>());
  if (variant == "quantum")
    return BlockSpec::quantum(j.at("p").get<Weight>(), j.at("ell").get<Weight>(),
                              j.at("lowest").get<Weight>(),
                              j.at("size").get<Weight>());
  throw std::invalid_argument("unknown variant: " + variant);
}

inline std::string render_matrix(const MultiplicityMatrix& M, const BlockSpec& spec,
                                 const std::string& kind,
                                 const RenderOptions& opt) {
  switch (opt.style) {
    case Style::Figure:
      return detail::figure_text(M, spec, opt);
    case Style::Csv: {
      std::string out = detail::csv_header(spec, opt);
      auto labels = detail::row_labels(spec, opt);
      for (Weight m = 0; m < M.size; ++m) {
        out += labels[m];
        for (Weight n = 0; n < M.size; ++n)
          out += M.entry(m, n) ? ",1" : ",0";
        out += "\n";
      }
      return out;
    }
    case Style::Json: {
      nlohmann::json j = spec_to_json(spec);
      j["kind"] = kind;
      j["encoding"] = "support";
      auto rows = nlohmann::json::array();
      for (const auto& r : M.rows) rows.push_back(r.indices());
      j["rows"] = std::move(rows);
      return j.dump(2) + "\n";
    }
  }
  throw std::logic_error("unreachable");
}

inline std::string render_matrix(const IntMatrix& M, const BlockSpec& spec,
                                 const std::string& kind,
                                 const RenderOptions& opt) {
  switch (opt.style) {
    case Style::Figure:
      return detail::figure_text(M, spec, opt);
    case Style::Csv: {
      std::string out = detail::csv_header(spec, opt);
      auto labels = detail::row_labels(spec, opt);
      for (Weight m = 0; m < M.size; ++m) {
        out += labels[m];
        for (Weight n = 0; n < M.size; ++n)
          out += "," + std::to_string(M.at(m, n));
        out += "\n";
      }
      return out;
    }
    case Style::Json: {
      nlohmann::json j = spec_to_json(spec);
      j["kind"] = kind;
      j["encoding"] = "dense";
      auto rows = nlohmann::json::array();
      for (Weight m = 0; m < M.size; ++m) {
        auto row = nlohmann::json::array();
        for (Weight n = 0; n < M.size; ++n) row.push_back(M.at(m, n));
        rows.push_back(std::move(row));
      }
      j["rows"] = std::move(rows);
      return j.dump(2) + "\n";
    }
  }
  throw std::logic_error("unreachable");
}

/// Parse a support-encoded matrix back from its JSON rendering.
inline std::pair<BlockSpec, MultiplicityMatrix> parse_support_json(
    const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SCHUR2_CHECK(j.at("encoding") == "support", "expected a support-encoded matrix");
  BlockSpec spec = spec_from_json(j);
  MultiplicityMatrix M;
  M.size = spec.size;
  for (const auto& row : j.at("rows"))
    M.rows.push_back(SparseRow(row.get<std::vector<Weight>>()));
  SCHUR2_CHECK(M.rows.size() == M.size, "row count mismatch");
  return {spec, M};
}

inline nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json j{{"theorem", rep.theorem},
                   {"params", spec_to_json(rep.params)},
                   {"status", rep.pass ? "pass" : "fail"},
                   {"pairs", rep.pairs_checked},
                   {"millis", rep.millis}};
  if (rep.witness) {
    j["witness"] = nlohmann::json{{"lambda", rep.witness->lambda},
                                  {"rho", rep.witness->rho},
                                  {"lhs", rep.witness->lhs},
                                  {"rhs", rep.witness->rhs},
                                  {"note", rep.witness->note}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline std::string report_line(const VerificationReport& rep) {
  std::string line = rep.pass ? "[pass] " : "[FAIL] ";
  line += rep.theorem;
  line += " " + std::string(to_string(rep.params.variant));
  line += " p=" + std::to_string(rep.params.p);
  if (rep.params.variant == Variant::Quantum)
    line += " ell=" + std::to_string(rep.params.ell);
  line += " size=" + std::to_string(rep.params.size);
  line += " pairs=" + std::to_string(rep.pairs_checked);
  if (rep.witness) {
    const Witness& w = *rep.witness;
    line += " witness{lambda=" + std::to_string(w.lambda) +
            " rho=" + std::to_string(w.rho) + " lhs=" + std::to_string(w.lhs) +
            " rhs=" + std::to_string(w.rhs);
    if (!w.note.empty()) line += " note=\"" + w.note + "\"";
    line += "}";
  }
  return line;
}

inline nlohmann::json component_to_json(const BlockComponent& c) {
  nlohmann::json j{{"weights", c.weights},
                   {"primitive", c.primitive},
                   {"ell_strips", c.ell_strips},
                   {"p_strips", c.p_strips}};
  j["identified"] = c.identified ? spec_to_json(*c.identified) : nlohmann::json();
  return j;
}

inline std::string components_text(const std::vector<BlockComponent>& comps) {
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    out += "block " + std::to_string(i) + ": weights {";
    for (std::size_t k = 0; k < c.weights.size(); ++k)
      out += (k ? "," : "") + std::to_string(c.weights[k]);
    out += "} ";
    out += c.primitive ? "primitive" : "imprimitive";
    if (c.identified) {
      const BlockSpec& s = *c.identified;
      if (c.primitive) {
        out += " lowest=" + std::to_string(s.lowest) +
               " size=" + std::to_string(s.size);
      } else {
        out += " strips{ell=" + std::to_string(c.ell_strips) +
               ",p=" + std::to_string(c.p_strips) + "}";
        out += " core{classical p=" + std::to_string(s.p) +
               " lowest=" + std::to_string(s.lowest) +
               " size=" + std::to_string(s.size) + "}";
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace schur2
