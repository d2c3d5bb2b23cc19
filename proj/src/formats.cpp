#include "minlob/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <random>
#include <sstream>

namespace minlob {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Non-blank, non-comment lines split on whitespace.
std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (line.tokens.empty() || line.tokens.front().front() == 'c') continue;
    out.push_back(std::move(line));
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  }
  return value;
}

// A 1-based id on disk, returned 0-based.
std::size_t parse_id(std::string_view token, std::size_t line, const char* what) {
  auto v = parse_int<std::size_t>(token, line, what);
  if (v == 0) throw ParseError(line, std::string(what) + " ids are 1-based, got 0");
  return v - 1;
}

Bag parse_bag(const Line& line, std::size_t first) {
  Bag bag;
  for (std::size_t i = first; i < line.tokens.size(); ++i) bag.push_back(parse_id(line.tokens[i], line.number, "vertex"));
  std::sort(bag.begin(), bag.end());
  if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) throw ParseError(line.number, "vertex repeated in a bag");
  return bag;
}

void write_bag(std::ostream& os, const Bag& bag) {
  Bag sorted = bag;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Vertex v : sorted) os << ' ' << v + 1;
}

// Collects "<keyword> <index> <v...>" lines into a dense 0..m-1 table.
class IndexedBags {
 public:
  void add(const Line& line, const char* what) {
    if (line.tokens.size() < 2) throw ParseError(line.number, std::string("missing ") + what + " index");
    std::size_t index = parse_id(line.tokens[1], line.number, what);
    if (!bags_.emplace(index, parse_bag(line, 2)).second) {
      throw ParseError(line.number, std::string(what) + " " + std::to_string(index + 1) + " given twice");
    }
  }

  std::vector<Bag> take(const char* what) {
    std::vector<Bag> out;
    for (auto& [index, bag] : bags_) {
      if (index != out.size()) {
        throw ParseError(0, std::string(what) + " " + std::to_string(out.size() + 1) + " is missing");
      }
      out.push_back(std::move(bag));
    }
    return out;
  }

 private:
  std::map<std::size_t, Bag> bags_;
};

}  // namespace

Digraph parse_graph(std::string_view text) {
  std::optional<std::size_t> n, m;
  std::vector<Arc> arcs;
  for (const Line& line : significant_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "p") {
      if (n) throw ParseError(line.number, "second header line");
      if (t.size() != 4 || t[1] != "digraph") throw ParseError(line.number, "header must read 'p digraph <n> <m>'");
      n = parse_int<std::size_t>(t[2], line.number, "vertex count");
      m = parse_int<std::size_t>(t[3], line.number, "arc count");
    } else if (t[0] == "a") {
      if (!n) throw ParseError(line.number, "arc line before the header");
      if (t.size() != 3) throw ParseError(line.number, "arc line must read 'a <u> <v>'");
      Vertex u = parse_id(t[1], line.number, "vertex");
      Vertex v = parse_id(t[2], line.number, "vertex");
      if (u >= *n || v >= *n) throw ParseError(line.number, "vertex id outside 1.." + std::to_string(*n));
      if (u == v) throw ParseError(line.number, "self-loop at vertex " + std::to_string(u + 1));
      if (arcs.size() == *m) {
        throw ParseError(line.number, "more arc lines than the " + std::to_string(*m) + " declared");
      }
      arcs.push_back({u, v});
    } else {
      throw ParseError(line.number, "unexpected line starting with '" + std::string(t[0]) + "'");
    }
  }
  if (!n) throw ParseError(0, "missing 'p digraph' header");
  if (arcs.size() != *m) {
    throw ParseError(0, "header declares " + std::to_string(*m) + " arcs, found " + std::to_string(arcs.size()));
  }
  return Digraph(*n, arcs);
}

std::string serialize_graph(const Digraph& d) {
  std::ostringstream os;
  os << "p digraph " << d.order() << ' ' << d.size() << '\n';
  for (const Arc& a : d.arcs()) os << "a " << a.tail + 1 << ' ' << a.head + 1 << '\n';
  return os.str();
}

CnfFormula parse_cnf(std::string_view text) {
  std::optional<std::size_t> k, p;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  for (const Line& line : significant_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "%") break;
    if (t[0] == "p") {
      if (k) throw ParseError(line.number, "second header line");
      if (t.size() != 4 || t[1] != "cnf") throw ParseError(line.number, "header must read 'p cnf <k> <p>'");
      k = parse_int<std::size_t>(t[2], line.number, "variable count");
      p = parse_int<std::size_t>(t[3], line.number, "clause count");
      continue;
    }
    if (!k) throw ParseError(line.number, "clause before the 'p cnf' header");
    for (std::string_view tok : t) {
      auto lit = parse_int<long long>(tok, line.number, "literal");
      if (lit != 0) {
        auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
        if (var > *k) {
          throw ParseError(line.number, "variable " + std::to_string(var) + " exceeds the declared " + std::to_string(*k));
        }
        pending.push_back({var - 1, lit < 0});
        continue;
      }
      for (std::size_t i = 0; i < pending.size(); ++i) {
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
          if (pending[i].variable == pending[j].variable) {
            throw ParseError(line.number, "repeated variable " + std::to_string(pending[i].variable + 1) + " in clause");
          }
        }
      }
      if (pending.size() != 3) {
        throw ParseError(line.number, "clause has " + std::to_string(pending.size()) + " literals; exactly 3 required");
      }
      clauses.push_back({pending[0], pending[1], pending[2]});
      pending.clear();
    }
  }
  if (!k) throw ParseError(0, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(0, "last clause is not terminated by 0");
  if (clauses.size() != *p) {
    throw ParseError(0, "header declares " + std::to_string(*p) + " clauses, found " + std::to_string(clauses.size()));
  }
  return CnfFormula(*k, std::move(clauses));
}

std::string serialize_cnf(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.var_count() << ' ' << f.clauses().size() << '\n';
  for (const Clause& c : f.clauses()) {
    for (const Literal& l : c) os << (l.negated ? "-" : "") << l.variable + 1 << ' ';
    os << "0\n";
  }
  return os.str();
}

std::string certificate_kind(const Certificate& c) {
  static const char* const kNames[] = {"out-branching", "dpd", "dagd", "arboreal"};
  return kNames[c.index()];
}

Certificate parse_certificate(std::string_view text) {
  enum class Kind { none, branching, bags, arboreal };
  Kind kind = Kind::none;
  auto claim = [&](Kind k, const Line& line) {
    if (kind != Kind::none && kind != k) throw ParseError(line.number, "certificate mixes line kinds");
    kind = k;
  };

  std::optional<Vertex> root;
  std::vector<Arc> tree_arcs;
  IndexedBags bags;
  std::vector<std::pair<std::size_t, Arc>> index_arcs;  // (line, arc)
  std::vector<std::pair<Arc, Bag>> labelled;

  for (const Line& line : significant_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "b") {
      claim(Kind::branching, line);
      if (t.size() != 3) throw ParseError(line.number, "expected 'b root <r>' or 'b <parent> <child>'");
      if (t[1] == "root") {
        if (root) throw ParseError(line.number, "second root line");
        root = parse_id(t[2], line.number, "vertex");
      } else {
        tree_arcs.push_back({parse_id(t[1], line.number, "vertex"), parse_id(t[2], line.number, "vertex")});
      }
    } else if (t[0] == "bag") {
      claim(Kind::bags, line);
      bags.add(line, "bag");
    } else if (t[0] == "harc") {
      claim(Kind::bags, line);
      if (t.size() != 3) throw ParseError(line.number, "expected 'harc <h1> <h2>'");
      index_arcs.push_back({line.number, {parse_id(t[1], line.number, "bag"), parse_id(t[2], line.number, "bag")}});
    } else if (t[0] == "node") {
      claim(Kind::arboreal, line);
      bags.add(line, "node");
    } else if (t[0] == "tarc") {
      claim(Kind::arboreal, line);
      if (t.size() < 3) throw ParseError(line.number, "expected 'tarc <id1> <id2> <v...>'");
      Arc e{parse_id(t[1], line.number, "node"), parse_id(t[2], line.number, "node")};
      labelled.push_back({e, parse_bag(line, 3)});
    } else {
      throw ParseError(line.number, "unexpected line starting with '" + std::string(t[0]) + "'");
    }
  }

  switch (kind) {
    case Kind::none:
      throw ParseError(0, "empty certificate");
    case Kind::branching:
      if (!root) throw ParseError(0, "missing 'b root <r>' line");
      return BranchingRecord{*root, std::move(tree_arcs)};
    case Kind::bags: {
      std::vector<Bag> table = bags.take("bag");
      if (index_arcs.empty()) return PathDecomposition{std::move(table)};
      std::vector<Arc> arcs;
      for (const auto& [number, a] : index_arcs) {
        if (a.tail >= table.size() || a.head >= table.size()) throw ParseError(number, "harc refers to a missing bag");
        if (a.tail == a.head) throw ParseError(number, "harc is a self-loop");
        arcs.push_back(a);
      }
      std::size_t m = table.size();
      return DagDecomposition{Digraph(m, arcs), std::move(table)};
    }
    case Kind::arboreal: {
      std::vector<Bag> table = bags.take("node");
      for (const auto& [e, label] : labelled) {
        if (e.tail >= table.size() || e.head >= table.size()) throw ParseError(0, "tarc refers to a missing node");
      }
      return ArborealRecord{std::move(table), std::move(labelled)};
    }
  }
  throw ParseError(0, "unreachable");
}

std::string serialize_branching(const OutTree& t) {
  std::ostringstream os;
  os << "b root " << t.root() + 1 << '\n';
  for (const Arc& a : t.arcs()) os << "b " << a.tail + 1 << ' ' << a.head + 1 << '\n';
  return os.str();
}

std::string serialize_dpd(const PathDecomposition& dec) {
  std::ostringstream os;
  for (std::size_t i = 0; i < dec.bags.size(); ++i) {
    os << "bag " << i + 1;
    write_bag(os, dec.bags[i]);
    os << '\n';
  }
  return os.str();
}

std::string serialize_dagd(const DagDecomposition& dec) {
  std::ostringstream os;
  os << serialize_dpd(PathDecomposition{dec.bags});
  for (const Arc& a : dec.index.arcs()) os << "harc " << a.tail + 1 << ' ' << a.head + 1 << '\n';
  return os.str();
}

std::string serialize_arboreal(const ArborealDecomposition& dec) {
  std::ostringstream os;
  for (std::size_t i = 0; i < dec.node_bags.size(); ++i) {
    os << "node " << i + 1;
    write_bag(os, dec.node_bags[i]);
    os << '\n';
  }
  for (const Arc& e : dec.tree.arcs()) {
    os << "tarc " << e.tail + 1 << ' ' << e.head + 1;
    if (auto it = dec.arc_labels.find(e); it != dec.arc_labels.end()) write_bag(os, it->second);
    os << '\n';
  }
  return os.str();
}

ArborealDecomposition to_arboreal(const ArborealRecord& record) {
  if (record.node_bags.empty()) throw InputError("arboreal decomposition has no nodes");
  std::vector<Arc> arcs;
  std::map<Arc, Bag> labels;
  for (const auto& [e, label] : record.tree_arcs) {
    arcs.push_back(e);
    labels[e] = label;
  }
  // The root is the one node that is nobody's child.
  std::vector<bool> is_child(record.node_bags.size(), false);
  for (const Arc& e : arcs) is_child.at(e.head) = true;
  auto it = std::find(is_child.begin(), is_child.end(), false);
  Vertex root = it == is_child.end() ? 0 : static_cast<Vertex>(it - is_child.begin());
  OutTree tree(root, arcs);
  if (tree.order() != record.node_bags.size()) {
    auto it2 = it == is_child.end() ? it : std::find(std::next(it), is_child.end(), false);
    Vertex stray = it2 == is_child.end() ? root : static_cast<Vertex>(it2 - is_child.begin());
    throw InvalidCertificate({"multiple-roots", {}, {stray}});
  }
  return {std::move(tree), record.node_bags, std::move(labels)};
}

std::string serialize_certificate(const Certificate& c) {
  struct Writer {
    std::string operator()(const BranchingRecord& r) const {
      std::ostringstream os;
      os << "b root " << r.root + 1 << '\n';
      std::vector<Arc> arcs = r.arcs;
      std::sort(arcs.begin(), arcs.end());
      for (const Arc& a : arcs) os << "b " << a.tail + 1 << ' ' << a.head + 1 << '\n';
      return os.str();
    }
    std::string operator()(const PathDecomposition& d) const { return serialize_dpd(d); }
    std::string operator()(const DagDecomposition& d) const { return serialize_dagd(d); }
    std::string operator()(const ArborealRecord& r) const {
      std::ostringstream os;
      for (std::size_t i = 0; i < r.node_bags.size(); ++i) {
        os << "node " << i + 1;
        write_bag(os, r.node_bags[i]);
        os << '\n';
      }
      auto arcs = r.tree_arcs;
      std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [e, label] : arcs) {
        os << "tarc " << e.tail + 1 << ' ' << e.head + 1;
        write_bag(os, label);
        os << '\n';
      }
      return os.str();
    }
  };
  return std::visit(Writer{}, c);
}

Digraph random_digraph(std::size_t n, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (draw < density) arcs.push_back({u, v});
    }
  }
  return Digraph(n, arcs);
}

}  // namespace minlob
