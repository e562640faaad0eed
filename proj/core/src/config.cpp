#include "qonet/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qonet/errors.hpp"
#include "qonet/text_util.hpp"

namespace qonet {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw ConfigError(ConfigError::Kind::parse,
                    "config line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void validation_fail(const std::string& msg) {
  throw ConfigError(ConfigError::Kind::validation, "config: " + msg);
}

double parse_number(const std::string& token, int line,
                    const std::string& field) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    parse_fail(line, field + ": '" + token + "' is not a number");
  }
  return value;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<double> parse_numbers(const std::string& value, int line,
                                  const std::string& field) {
  std::vector<double> out;
  for (const std::string& tok : split_ws(value)) {
    out.push_back(parse_number(tok, line, field));
  }
  return out;
}

// Edge entries look like "[i, j, mu]".
std::tuple<int, int, double> parse_edge(const std::string& value, int line) {
  std::string body = trim(value);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    parse_fail(line, "edge: expected [i, j, mu], got '" + value + "'");
  }
  body = body.substr(1, body.size() - 2);
  std::replace(body.begin(), body.end(), ',', ' ');
  const std::vector<std::string> parts = split_ws(body);
  if (parts.size() != 3) {
    parse_fail(line, "edge: expected three entries [i, j, mu]");
  }
  const double i = parse_number(parts[0], line, "edge node");
  const double j = parse_number(parts[1], line, "edge node");
  const double mu = parse_number(parts[2], line, "edge weight");
  if (i != std::floor(i) || j != std::floor(j)) {
    parse_fail(line, "edge: node indices must be integers");
  }
  return {static_cast<int>(i), static_cast<int>(j), mu};
}

struct RawEntry {
  std::string value;
  int line;
};

}  // namespace

const char* graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::complete: return "complete";
    case GraphKind::path: return "path";
    case GraphKind::star: return "star";
    case GraphKind::random_connected: return "random-connected";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  // section -> key -> entries (repeatable keys keep every entry).
  std::map<std::string, std::map<std::string, std::vector<RawEntry>>> doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  bool any_content = false;

  static const std::map<std::string, std::set<std::string>> known = {
      {"plant", {"r_p", "C_p"}},
      {"coupling", {"alpha1"}},
      {"graph",
       {"observers", "generator", "weight", "seed", "weight_min", "weight_max",
        "edge", "plant_node"}},
      {"grid", {"t_max", "step"}},
      {"averages", {"horizons"}},
      {"outputs", {"artifacts"}},
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash_pos = raw.find('#');
    if (hash_pos != std::string::npos) raw.erase(hash_pos);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    any_content = true;

    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (!known.count(section)) {
        parse_fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      parse_fail(line_no, "expected 'key = value', got '" + line + "'");
    }
    if (section.empty()) {
      parse_fail(line_no, "key outside any [section]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known.at(section).count(key)) {
      parse_fail(line_no, "unknown key '" + key + "' in [" + section + "]");
    }
    doc[section][key].push_back({value, line_no});
  }

  if (!any_content) {
    throw ConfigError(ConfigError::Kind::parse, "config: empty document");
  }

  auto single = [&](const std::string& sect,
                    const std::string& key) -> const RawEntry* {
    auto s = doc.find(sect);
    if (s == doc.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    if (k->second.size() > 1) {
      parse_fail(k->second[1].line,
                 "duplicate key '" + key + "' in [" + sect + "]");
    }
    return &k->second.front();
  };
  auto require = [&](const std::string& sect, const std::string& key) {
    const RawEntry* e = single(sect, key);
    if (!e) validation_fail("missing required field " + sect + "." + key);
    return e;
  };

  ExperimentConfig cfg;

  {
    const RawEntry* cp = require("plant", "C_p");
    const auto v = parse_numbers(cp->value, cp->line, "plant.C_p");
    if (v.size() != 3) validation_fail("plant.C_p needs three entries");
    cfg.plant.C_p << v[0], v[1], v[2];
    if (const RawEntry* rp = single("plant", "r_p")) {
      const auto r = parse_numbers(rp->value, rp->line, "plant.r_p");
      if (r.size() != 3) validation_fail("plant.r_p needs three entries");
      cfg.plant.r_p << r[0], r[1], r[2];
    }
    if (cfg.plant.C_p.isZero(0.0)) {
      validation_fail("plant.C_p must be nonzero");
    }
  }

  {
    const RawEntry* a1 = require("coupling", "alpha1");
    const auto v = parse_numbers(a1->value, a1->line, "coupling.alpha1");
    if (v.size() != 2) validation_fail("coupling.alpha1 needs two entries");
    cfg.alpha1 << v[0], v[1];
    if (cfg.alpha1.isZero(0.0)) {
      validation_fail("coupling.alpha1 must be nonzero");
    }
  }

  {
    const RawEntry* n = require("graph", "observers");
    const double nv = parse_number(n->value, n->line, "graph.observers");
    if (nv != std::floor(nv) || nv < 1) {
      validation_fail("graph.observers must be a positive integer");
    }
    cfg.graph.observer_count = static_cast<int>(nv);

    if (const RawEntry* pn = single("graph", "plant_node")) {
      if (parse_number(pn->value, pn->line, "graph.plant_node") != 0.0) {
        validation_fail("graph.plant_node: the plant must be node 0");
      }
    }

    const RawEntry* gen = single("graph", "generator");
    const bool has_edges =
        doc.count("graph") && doc["graph"].count("edge") > 0;

    if (gen && has_edges) {
      validation_fail("graph: give either a generator or an edge list, "
                      "not both");
    }
    if (!gen && !has_edges) {
      validation_fail("graph: needs a generator or at least one edge");
    }

    if (gen) {
      const std::string name = gen->value;
      if (name == "complete") cfg.graph.generator = GraphKind::complete;
      else if (name == "path") cfg.graph.generator = GraphKind::path;
      else if (name == "star") cfg.graph.generator = GraphKind::star;
      else if (name == "random-connected")
        cfg.graph.generator = GraphKind::random_connected;
      else parse_fail(gen->line, "unknown generator '" + name + "'");

      if (const RawEntry* w = single("graph", "weight")) {
        cfg.graph.weight = parse_number(w->value, w->line, "graph.weight");
        if (!(cfg.graph.weight > 0.0)) {
          validation_fail("graph.weight must be positive");
        }
      }
      if (const RawEntry* s = single("graph", "seed")) {
        const double sv = parse_number(s->value, s->line, "graph.seed");
        if (sv != std::floor(sv) || sv < 0) {
          validation_fail("graph.seed must be a nonnegative integer");
        }
        cfg.graph.seed = static_cast<std::uint64_t>(sv);
      }
      if (const RawEntry* w = single("graph", "weight_min")) {
        cfg.graph.weight_min =
            parse_number(w->value, w->line, "graph.weight_min");
      }
      if (const RawEntry* w = single("graph", "weight_max")) {
        cfg.graph.weight_max =
            parse_number(w->value, w->line, "graph.weight_max");
      }
      if (cfg.graph.generator == GraphKind::random_connected &&
          (!(cfg.graph.weight_min > 0.0) ||
           cfg.graph.weight_max < cfg.graph.weight_min)) {
        validation_fail("graph: need 0 < weight_min <= weight_max");
      }
    } else {
      for (const RawEntry& e : doc["graph"]["edge"]) {
        const auto [i, j, mu] = parse_edge(e.value, e.line);
        if (i >= j) {
          validation_fail("edge [" + std::to_string(i) + ", " +
                          std::to_string(j) + ", ...]: need i < j");
        }
        if (i < 0 || j > cfg.graph.observer_count) {
          validation_fail("edge [" + std::to_string(i) + ", " +
                          std::to_string(j) + ", ...]: node outside 0.." +
                          std::to_string(cfg.graph.observer_count));
        }
        if (!(mu > 0.0)) {
          validation_fail("edge [" + std::to_string(i) + ", " +
                          std::to_string(j) + ", " + format_double(mu) +
                          "]: weight must be positive");
        }
        cfg.graph.edges.emplace_back(i, j, mu);
      }
    }
  }

  if (const RawEntry* t = single("grid", "t_max")) {
    cfg.grid.t_max = parse_number(t->value, t->line, "grid.t_max");
  }
  if (const RawEntry* s = single("grid", "step")) {
    cfg.grid.step = parse_number(s->value, s->line, "grid.step");
  }
  if (!(cfg.grid.t_max > 0.0)) validation_fail("grid.t_max must be positive");
  if (!(cfg.grid.step > 0.0)) validation_fail("grid.step must be positive");

  if (const RawEntry* h = single("averages", "horizons")) {
    cfg.horizons = parse_numbers(h->value, h->line, "averages.horizons");
    if (cfg.horizons.empty()) {
      validation_fail("averages.horizons must not be empty");
    }
    for (double T : cfg.horizons) {
      if (!(T > 0.0)) validation_fail("averages.horizons must be positive");
    }
  }

  if (const RawEntry* o = single("outputs", "artifacts")) {
    cfg.outputs = split_ws(o->value);
    static const std::set<std::string> allowed = {"realization", "traces",
                                                  "averages", "residuals"};
    for (const std::string& token : cfg.outputs) {
      if (!allowed.count(token)) {
        validation_fail("outputs.artifacts: unknown artifact '" + token + "'");
      }
    }
  }

  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(ConfigError::Kind::validation,
                      "cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto vec = [](const auto& v) {
    std::string s;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (k) s += ' ';
      s += format_double(v(k));
    }
    return s;
  };

  out << "[plant]\n";
  out << "r_p = " << vec(cfg.plant.r_p) << "\n";
  out << "C_p = " << vec(cfg.plant.C_p) << "\n";
  out << "\n[coupling]\n";
  out << "alpha1 = " << vec(cfg.alpha1) << "\n";
  out << "\n[graph]\n";
  out << "observers = " << cfg.graph.observer_count << "\n";
  if (cfg.graph.generator) {
    out << "generator = " << graph_kind_name(*cfg.graph.generator) << "\n";
    if (*cfg.graph.generator == GraphKind::random_connected) {
      out << "seed = " << cfg.graph.seed << "\n";
      out << "weight_min = " << format_double(cfg.graph.weight_min) << "\n";
      out << "weight_max = " << format_double(cfg.graph.weight_max) << "\n";
    } else {
      out << "weight = " << format_double(cfg.graph.weight) << "\n";
    }
  } else {
    for (const auto& [i, j, mu] : cfg.graph.edges) {
      out << "edge = [" << i << ", " << j << ", " << format_double(mu)
          << "]\n";
    }
  }
  out << "\n[grid]\n";
  out << "t_max = " << format_double(cfg.grid.t_max) << "\n";
  out << "step = " << format_double(cfg.grid.step) << "\n";
  out << "\n[averages]\n";
  out << "horizons =";
  for (double T : cfg.horizons) out << ' ' << format_double(T);
  out << "\n";
  out << "\n[outputs]\n";
  out << "artifacts =";
  for (const std::string& token : cfg.outputs) out << ' ' << token;
  out << "\n";
  return out.str();
}

ObserverGraph build_graph(const GraphConfig& graph) {
  if (graph.generator) {
    switch (*graph.generator) {
      case GraphKind::complete:
        return make_complete(graph.observer_count, graph.weight);
      case GraphKind::path:
        return make_path(graph.observer_count, graph.weight);
      case GraphKind::star:
        return make_star(graph.observer_count, graph.weight);
      case GraphKind::random_connected:
        return make_random_connected(graph.observer_count, graph.seed,
                                     graph.weight_min, graph.weight_max);
    }
  }
  ObserverGraph g(graph.observer_count);
  for (const auto& [i, j, mu] : graph.edges) {
    g.add_edge(i, j, mu);
  }
  return g;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return fnv1a_64(serialize_config(cfg));
}

}  // namespace qonet
