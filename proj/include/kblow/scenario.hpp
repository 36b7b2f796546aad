#pragma once

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kblow/approx.hpp"
#include "kblow/diagonal.hpp"
#include "kblow/localization.hpp"
#include "kblow/rees.hpp"

namespace kblow {

// Parse failure with position: "<source>:<line>: message".
struct parse_error : kb_error {
  parse_error(const std::string& source, int line, const std::string& message)
      : kb_error(source + ":" + std::to_string(line) + ": " + message) {}
};

// Localization block: components plus either a literal total class or the
// data of a Koszul-oracle total chi(O) - s chi(O(m)) on P(zl_w).
struct LocalizationCase {
  std::vector<std::string> component_names;
  std::optional<RationalClass> total;
  std::optional<Bundle> zl_w;
  std::optional<ExponentVector> zl_s;
  int zl_m = 0;
};

struct SequenceCase {
  std::vector<std::pair<std::string, RationalClass>> steps;  // model name, adjust
  RationalClass initial;
  bool terminal_empty = true;
};

struct CheckSpec {
  std::string suite;
  std::map<std::string, std::string> params;
  int line = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "serre",    "vanishing",         "lattice",      "comparison",
      "rees-presentation", "diagonal", "localization", "approx"};
  return names;
}

// A parsed verification scenario: named models and data, plus the checks to
// run over them.
struct Scenario {
  int torus_rank = 0;
  uint64_t seed = 0;
  int truncation = 12;

  std::map<std::string, BlowupModel> models;
  std::map<std::string, DiagonalScenario> diagonals;
  std::map<std::string, FixedComponentDatum> components;
  std::map<std::string, LocalizationCase> localizations;
  std::map<std::string, SequenceCase> sequences;
  std::vector<CheckSpec> checks;

  VarShape shape() const { return VarShape{torus_rank, 0}; }

  const BlowupModel& model(const std::string& name) const {
    auto it = models.find(name);
    if (it == models.end()) throw kb_error("unresolved model name '" + name + "'");
    return it->second;
  }

  const FixedComponentDatum& component(const std::string& name) const {
    auto it = components.find(name);
    if (it == components.end()) throw kb_error("unresolved component name '" + name + "'");
    return it->second;
  }
};

namespace scn {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

inline int parse_int(const std::string& source, int line, const std::string& tok) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (...) {
    throw parse_error(source, line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw parse_error(source, line, "expected integer, got '" + tok + "'");
  return v;
}

// "1,0,-2" -> exponent tuple of the scenario's torus shape.
inline ExponentVector parse_tuple(const std::string& source, int line, VarShape shape,
                                  const std::string& tok) {
  std::vector<int> e;
  std::string cur;
  for (char c : tok + ",") {
    if (c == ',') {
      if (cur.empty()) throw parse_error(source, line, "malformed tuple '" + tok + "'");
      e.push_back(parse_int(source, line, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (static_cast<int>(e.size()) != shape.torus)
    throw parse_error(source, line,
                      "tuple '" + tok + "' has " + std::to_string(e.size()) +
                          " entries, torus rank is " + std::to_string(shape.torus));
  return ExponentVector(shape, std::move(e));
}

// Terms "3", "-1:1,0,0"; a bare integer is a constant.
inline LaurentPoly parse_poly(const std::string& source, int line, VarShape shape,
                              const std::vector<std::string>& toks, size_t from, size_t to) {
  if (from >= to) throw parse_error(source, line, "empty polynomial");
  LaurentPoly p(shape);
  for (size_t i = from; i < to; ++i) {
    const std::string& tok = toks[i];
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      p.add_term(ExponentVector::unit(shape), parse_int(source, line, tok));
    } else {
      Int c = parse_int(source, line, tok.substr(0, colon));
      p.add_term(parse_tuple(source, line, shape, tok.substr(colon + 1)), c);
    }
  }
  return p;
}

// "poly [/ m1 m2 ...]" where each m is a tuple naming a factor (1 - t^m).
inline RationalClass parse_rational(const std::string& source, int line, VarShape shape,
                                    const std::vector<std::string>& toks, size_t from) {
  size_t slash = toks.size();
  for (size_t i = from; i < toks.size(); ++i)
    if (toks[i] == "/") slash = i;
  LaurentPoly num = parse_poly(source, line, shape, toks, from, slash);
  std::vector<ExponentVector> factors;
  for (size_t i = slash + 1; i < toks.size(); ++i)
    factors.push_back(parse_tuple(source, line, shape, toks[i]));
  if (slash != toks.size() && factors.empty())
    throw parse_error(source, line, "'/' with no denominator factors");
  return RationalClass(std::move(num), factors);
}

inline std::vector<ExponentVector> parse_weights(const std::string& source, int line,
                                                 VarShape shape,
                                                 const std::vector<std::string>& toks,
                                                 size_t from) {
  std::vector<ExponentVector> w;
  for (size_t i = from; i < toks.size(); ++i)
    w.push_back(parse_tuple(source, line, shape, toks[i]));
  return w;
}

}  // namespace scn

// Line-oriented scenario parser; see docs/scenario-format.md for the
// grammar. Errors carry the source name and line number.
inline Scenario parse_scenario(std::istream& in, const std::string& source) {
  using namespace scn;
  Scenario sc;
  bool have_rank = false;

  std::string raw;
  int lineno = 0;

  auto require_rank = [&](int line) {
    if (!have_rank) throw parse_error(source, line, "torus_rank must be declared first");
  };

  // Block state: kind, name, variant (models only), collected lines.
  std::string block_kind, block_name, block_variant;
  int block_line = 0;
  std::vector<std::pair<int, std::vector<std::string>>> block_lines;

  auto wrap = [&](int line, auto&& fn) {
    try {
      fn();
    } catch (const parse_error&) {
      throw;
    } catch (const kb_error& e) {
      throw parse_error(source, line, e.what());
    }
  };

  auto finish_block = [&]() {
    const VarShape shape = sc.shape();
    if (block_kind == "model") {
      std::vector<ExponentVector> v, w, v1, v0;
      const bool chart = (block_variant == "chart");
      for (const auto& [ln, toks] : block_lines) {
        const std::string& key = toks[0];
        if (!chart && key == "v")
          v = parse_weights(source, ln, shape, toks, 1);
        else if (!chart && key == "w")
          w = parse_weights(source, ln, shape, toks, 1);
        else if (chart && key == "v1")
          v1 = parse_weights(source, ln, shape, toks, 1);
        else if (chart && key == "v0")
          v0 = parse_weights(source, ln, shape, toks, 1);
        else
          throw parse_error(source, ln,
                            "unknown " + block_variant + " model key '" + key + "'");
      }
      wrap(block_line, [&] {
        BlowupModel m = chart ? BlowupModel::chart(Bundle(shape, v1), Bundle(shape, v0))
                              : BlowupModel::zero_section(
                                    TwoTermComplex(Bundle(shape, v), Bundle(shape, w)));
        if (!sc.models.emplace(block_name, std::move(m)).second)
          throw kb_error("duplicate model name '" + block_name + "'");
      });
    } else if (block_kind == "diagonal") {
      int r = -1;
      std::vector<ExponentVector> weights;
      auto twist = DiagonalScenario::Twist::plus_one;
      for (const auto& [ln, toks] : block_lines) {
        const std::string& key = toks[0];
        if (key == "r")
          r = parse_int(source, ln, toks.at(1));
        else if (key == "weights")
          weights = parse_weights(source, ln, shape, toks, 1);
        else if (key == "twist") {
          if (toks.at(1) == "plus_one")
            twist = DiagonalScenario::Twist::plus_one;
          else if (toks.at(1) == "minus_one")
            twist = DiagonalScenario::Twist::minus_one;
          else
            throw parse_error(source, ln, "twist must be plus_one or minus_one");
        } else
          throw parse_error(source, ln, "unknown diagonal key '" + key + "'");
      }
      wrap(block_line, [&] {
        if (!sc.diagonals.emplace(block_name, DiagonalScenario(r, Bundle(shape, weights), twist))
                 .second)
          throw kb_error("duplicate diagonal name '" + block_name + "'");
      });
    } else if (block_kind == "component") {
      std::optional<RationalClass> intrinsic;
      std::vector<ExponentVector> v, w;
      for (const auto& [ln, toks] : block_lines) {
        const std::string& key = toks[0];
        if (key == "intrinsic")
          intrinsic = parse_rational(source, ln, shape, toks, 1);
        else if (key == "v")
          v = parse_weights(source, ln, shape, toks, 1);
        else if (key == "w")
          w = parse_weights(source, ln, shape, toks, 1);
        else
          throw parse_error(source, ln, "unknown component key '" + key + "'");
      }
      wrap(block_line, [&] {
        if (!intrinsic) throw kb_error("component needs an intrinsic class");
        FixedComponentDatum datum(*intrinsic,
                                  TwoTermComplex(Bundle(shape, v), Bundle(shape, w)));
        if (!sc.components.emplace(block_name, std::move(datum)).second)
          throw kb_error("duplicate component name '" + block_name + "'");
      });
    } else if (block_kind == "localization") {
      LocalizationCase lc;
      for (const auto& [ln, toks] : block_lines) {
        const std::string& key = toks[0];
        if (key == "components")
          lc.component_names.assign(toks.begin() + 1, toks.end());
        else if (key == "total")
          lc.total = parse_rational(source, ln, shape, toks, 1);
        else if (key == "zl_w")
          lc.zl_w = Bundle(shape, parse_weights(source, ln, shape, toks, 1));
        else if (key == "zl_s")
          lc.zl_s = parse_tuple(source, ln, shape, toks.at(1));
        else if (key == "zl_m")
          lc.zl_m = parse_int(source, ln, toks.at(1));
        else
          throw parse_error(source, ln, "unknown localization key '" + key + "'");
      }
      wrap(block_line, [&] {
        if (lc.component_names.empty()) throw kb_error("localization needs components");
        bool zl = lc.zl_w.has_value() && lc.zl_s.has_value();
        if (lc.total.has_value() == zl)
          throw kb_error("localization needs exactly one of 'total' or 'zl_*' data");
        if (!sc.localizations.emplace(block_name, std::move(lc)).second)
          throw kb_error("duplicate localization name '" + block_name + "'");
      });
    } else if (block_kind == "sequence") {
      SequenceCase q;
      bool have_initial = false;
      for (const auto& [ln, toks] : block_lines) {
        const std::string& key = toks[0];
        if (key == "step") {
          if (toks.size() < 3) throw parse_error(source, ln, "step needs a model and an adjust");
          q.steps.emplace_back(toks[1], parse_rational(source, ln, shape, toks, 2));
        } else if (key == "initial") {
          q.initial = parse_rational(source, ln, shape, toks, 1);
          have_initial = true;
        } else if (key == "terminal_empty") {
          q.terminal_empty = (toks.at(1) == "true");
        } else
          throw parse_error(source, ln, "unknown sequence key '" + key + "'");
      }
      wrap(block_line, [&] {
        if (!have_initial) throw kb_error("sequence needs an initial class");
        if (q.steps.empty()) throw kb_error("sequence needs steps");
        if (!sc.sequences.emplace(block_name, std::move(q)).second)
          throw kb_error("duplicate sequence name '" + block_name + "'");
      });
    } else if (block_kind == "check") {
      CheckSpec spec;
      spec.suite = block_name;
      spec.line = block_line;
      bool known = false;
      for (const auto& n : suite_names()) known |= (n == block_name);
      if (!known) throw parse_error(source, block_line, "unknown suite '" + block_name + "'");
      for (const auto& [ln, toks] : block_lines) {
        std::string value;
        for (size_t i = 1; i < toks.size(); ++i) {
          if (i > 1) value += " ";
          value += toks[i];
        }
        spec.params[toks[0]] = value;
      }
      sc.checks.push_back(std::move(spec));
    }
    block_kind.clear();
    block_name.clear();
    block_lines.clear();
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;

    if (!block_kind.empty()) {
      if (toks[0] == "end") {
        try {
          finish_block();
        } catch (const std::out_of_range&) {
          throw parse_error(source, block_line, "missing argument in block");
        }
      } else {
        block_lines.emplace_back(lineno, toks);
      }
      continue;
    }

    const std::string& head = toks[0];
    if (head == "torus_rank" || head == "seed" || head == "truncation") {
      if (toks.size() < 2) throw parse_error(source, lineno, head + " needs a value");
    }
    if (head == "torus_rank") {
      sc.torus_rank = parse_int(source, lineno, toks[1]);
      if (sc.torus_rank < 1) throw parse_error(source, lineno, "torus_rank must be >= 1");
      have_rank = true;
    } else if (head == "seed") {
      sc.seed = static_cast<uint64_t>(parse_int(source, lineno, toks[1]));
    } else if (head == "truncation") {
      sc.truncation = parse_int(source, lineno, toks[1]);
    } else if (head == "model" || head == "diagonal" || head == "component" ||
               head == "localization" || head == "sequence" || head == "check") {
      require_rank(lineno);
      if (toks.size() < 2) throw parse_error(source, lineno, head + " needs a name");
      block_kind = head;
      block_name = toks[1];
      block_variant.clear();
      block_line = lineno;
      if (head == "model") {
        if (toks.size() < 3 || (toks[2] != "zero_section" && toks[2] != "chart"))
          throw parse_error(source, lineno, "model kind must be zero_section or chart");
        block_variant = toks[2];
      }
    } else {
      throw parse_error(source, lineno, "unexpected token '" + head + "'");
    }
  }
  if (!block_kind.empty())
    throw parse_error(source, lineno, "unterminated block '" + block_kind + "'");

  // Resolve references eagerly so dangling names fail at parse time.
  for (const auto& [name, lc] : sc.localizations)
    for (const auto& cn : lc.component_names) sc.component(cn);
  for (const auto& [name, q] : sc.sequences)
    for (const auto& [mn, adj] : q.steps) sc.model(mn);

  return sc;
}

inline Scenario parse_scenario_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_scenario(in, source);
}

}  // namespace kblow
