#include "minlob/reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace minlob {

// ---------------------------------------------------------------------------
// Formulas

CnfFormula::CnfFormula(std::size_t var_count, std::vector<Clause> clauses)
    : var_count_(var_count), clauses_(std::move(clauses)) {
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    const Clause& c = clauses_[j];
    for (const Literal& l : c) {
      if (l.variable >= var_count_) {
        throw InputError("clause " + std::to_string(j + 1) + " uses variable " +
                         std::to_string(l.variable + 1) + " beyond the declared " +
                         std::to_string(var_count_));
      }
    }
    if (c[0].variable == c[1].variable || c[0].variable == c[2].variable ||
        c[1].variable == c[2].variable) {
      throw InputError("clause " + std::to_string(j + 1) + " repeats a variable");
    }
  }
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  if (assignment.size() != var_count_) throw InputError("assignment does not cover every variable");
  return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(),
                       [&](const Literal& l) { return assignment[l.variable] != l.negated; });
  });
}

std::optional<Assignment> find_satisfying_assignment(const CnfFormula& f) {
  const std::size_t k = f.var_count();
  if (k > 30) throw InputError("find_satisfying_assignment: too many variables for enumeration");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    Assignment a(k);
    for (std::size_t i = 0; i < k; ++i) a[i] = (bits >> i) & 1u;
    if (f.satisfied_by(a)) return a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gadget

namespace {

constexpr Vertex kX1 = 0, kY1 = 1, kZ1 = 2, kX2 = 3, kY2 = 4, kZ2 = 5;
constexpr std::size_t kGadgetOrder = 6;

constexpr Slot rotate(Slot s, std::size_t t) {
  return static_cast<Slot>((static_cast<std::size_t>(s) + t) % 3);
}

constexpr Vertex rotate(Vertex local, std::size_t t) {
  return gadget_vertex(rotate(static_cast<Slot>(local % 3), t), local < 3 ? 1 : 2);
}

using Path = std::vector<Vertex>;

// Every simple path of the gadget (including single vertices), grouped by
// start vertex, in depth-first order over ascending out-neighbours.
std::vector<std::vector<Path>> all_gadget_paths(const Digraph& h) {
  std::vector<std::vector<Path>> by_start(kGadgetOrder);
  std::function<void(Path&)> grow = [&](Path& p) {
    by_start[p.front()].push_back(p);
    for (Vertex w : h.out_neighbors(p.back())) {
      if (std::find(p.begin(), p.end(), w) != p.end()) continue;
      p.push_back(w);
      grow(p);
      p.pop_back();
    }
  };
  for (Vertex s = 0; s < kGadgetOrder; ++s) {
    Path p{s};
    grow(p);
  }
  return by_start;
}

bool disjoint_cover(const std::vector<const Path*>& family) {
  std::vector<int> hits(kGadgetOrder, 0);
  for (const Path* p : family) {
    for (Vertex v : *p) ++hits[v];
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

// Families of vertex-disjoint paths, one per start, jointly covering H.
std::vector<std::vector<Path>> covering_families(const std::vector<std::vector<Path>>& paths,
                                                 const std::vector<Vertex>& starts) {
  std::vector<std::vector<Path>> out;
  std::vector<const Path*> chosen;
  std::function<void(std::size_t)> pick = [&](std::size_t i) {
    if (i == starts.size()) {
      if (disjoint_cover(chosen)) {
        std::vector<Path> family;
        for (const Path* p : chosen) family.push_back(*p);
        out.push_back(std::move(family));
      }
      return;
    }
    for (const Path& p : paths[starts[i]]) {
      chosen.push_back(&p);
      pick(i + 1);
      chosen.pop_back();
    }
  };
  pick(0);
  return out;
}

std::string path_text(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + gadget_vertex_name(p[i]);
  return s;
}

}  // namespace

std::string gadget_vertex_name(Vertex local) {
  static const char* const kNames[] = {"x1", "y1", "z1", "x2", "y2", "z2"};
  if (local >= kGadgetOrder) throw InputError("gadget vertex out of range");
  return kNames[local];
}

Digraph build_gadget() {
  return Digraph(kGadgetOrder, {{kX1, kY1},
                                {kY1, kZ1},
                                {kZ1, kX1},
                                {kX1, kX2},
                                {kY1, kY2},
                                {kZ1, kZ2},
                                {kX2, kZ2},
                                {kZ2, kY2},
                                {kY2, kX2}});
}

bool GadgetReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const GadgetCheck& c) { return c.holds; });
}

GadgetReport verify_gadget_properties() {
  const Digraph h = build_gadget();
  const auto paths = all_gadget_paths(h);
  GadgetReport report;

  for (std::size_t t = 0; t < 3; ++t) {
    const Vertex a1 = rotate(kX1, t), a2 = rotate(kX2, t);
    const Vertex b1 = rotate(kY1, t), b2 = rotate(kY2, t);
    const Vertex c1 = rotate(kZ1, t), c2 = rotate(kZ2, t);

    // (i) / (ii) / (iii): hamiltonian linkages with 1, 2, 3 demands.
    auto linkage = [&](const std::string& name, std::vector<Vertex> starts, std::vector<Vertex> ends) {
      GadgetCheck check{name, t, false, "", {}};
      for (auto& family : covering_families(paths, starts)) {
        bool ok = true;
        for (std::size_t i = 0; i < family.size(); ++i) ok = ok && family[i].back() == ends[i];
        if (ok) {
          check.holds = true;
          check.witness = family;
          break;
        }
      }
      std::string text;
      for (const auto& p : check.witness) text += (text.empty() ? "" : " | ") + path_text(p);
      check.detail = check.holds ? "witness " + text : "no covering linkage";
      report.checks.push_back(std::move(check));
    };
    linkage("(i)", {a1}, {a2});
    linkage("(ii)", {a1, b1}, {a2, b2});
    linkage("(iii)", {a1, b1, c1}, {a2, b2, c2});

    // (iv): every hamilton path from a1 ends in a2.
    {
      auto families = covering_families(paths, {a1});
      GadgetCheck check{"(iv)", t, !families.empty(), "", {}};
      for (const auto& f : families) check.holds = check.holds && f[0].back() == a2;
      check.detail = std::to_string(families.size()) + " hamilton path(s) from " + gadget_vertex_name(a1);
      report.checks.push_back(std::move(check));
    }

    // (v): covering disjoint pairs from (a1, b1), both paths leaving their
    // start, end in (a2, b2) or (b2, c1). Pairs where one path is a single
    // vertex are listed separately; repair_to_compatible handles them too.
    {
      auto families = covering_families(paths, {a1, b1});
      GadgetCheck check{"(v)", t, true, "", {}};
      std::size_t proper = 0;
      std::ostringstream endings, degenerate;
      for (const auto& f : families) {
        Vertex ea = f[0].back(), eb = f[1].back();
        std::ostringstream& out = f[0].size() > 1 && f[1].size() > 1 ? endings : degenerate;
        out << " (" << gadget_vertex_name(ea) << "," << gadget_vertex_name(eb) << ")";
        if (&out == &degenerate) continue;
        bool ok = (ea == a2 && eb == b2) || (ea == b2 && eb == c1);
        check.holds = check.holds && ok;
        ++proper;
      }
      check.holds = check.holds && proper > 0;
      check.detail = std::to_string(proper) + " covering pair(s), endings:" + endings.str();
      if (!degenerate.str().empty()) check.detail += "; with a single-vertex path:" + degenerate.str();
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

std::vector<std::vector<Vertex>> gadget_traversal(const std::vector<Slot>& entered) {
  if (entered.empty() || entered.size() > 3 || !std::is_sorted(entered.begin(), entered.end()) ||
      std::adjacent_find(entered.begin(), entered.end()) != entered.end()) {
    throw InputError("gadget_traversal: entered slots must be sorted, distinct and non-empty");
  }
  static const std::map<std::vector<Slot>, std::vector<Path>> table = [] {
    const auto paths = all_gadget_paths(build_gadget());
    std::map<std::vector<Slot>, std::vector<Path>> t;
    for (unsigned mask = 1; mask < 8; ++mask) {
      std::vector<Slot> slots;
      std::vector<Vertex> starts, ends;
      for (std::size_t s = 0; s < 3; ++s) {
        if (mask & (1u << s)) {
          slots.push_back(static_cast<Slot>(s));
          starts.push_back(gadget_vertex(static_cast<Slot>(s), 1));
          ends.push_back(gadget_vertex(static_cast<Slot>(s), 2));
        }
      }
      for (auto& family : covering_families(paths, starts)) {
        bool ok = true;
        for (std::size_t i = 0; i < family.size(); ++i) ok = ok && family[i].back() == ends[i];
        if (ok) {
          t[slots] = family;
          break;
        }
      }
    }
    return t;
  }();
  return table.at(entered);
}

// ---------------------------------------------------------------------------
// Reduction

std::size_t ReducedInstance::clause_of(Vertex v) const {
  const std::size_t first = 1 + var_count();
  if (v < first) return npos;
  std::size_t j = (v - first) / 6;
  return j < clause_count() ? j : npos;
}

std::string ReducedInstance::vertex_name(Vertex v) const {
  if (v == root()) return "r";
  if (v <= var_count()) return "u" + std::to_string(v);
  std::size_t j = clause_of(v);
  if (j == npos) throw InputError("vertex " + std::to_string(v) + " is not in the instance");
  Vertex local = v - clause_vertex(j, Slot::x, 1);
  return gadget_vertex_name(local) + "(H" + std::to_string(j + 1) + ")";
}

ReducedInstance reduce_cnf(const CnfFormula& f) {
  if (f.clauses().empty()) throw InputError("reduce_cnf: the formula needs at least one clause");
  ReducedInstance inst(f);
  const std::size_t k = f.var_count();
  const std::size_t p = f.clauses().size();
  const std::size_t n = 6 * p + k + 1;

  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < k; ++i) arcs.push_back({inst.root(), inst.variable_vertex(i)});
  const Digraph h = build_gadget();
  const Vertex base0 = inst.clause_vertex(0, Slot::x, 1);
  for (std::size_t j = 0; j < p; ++j) {
    const Vertex base = base0 + 6 * j;
    for (const Arc& a : h.arcs()) arcs.push_back({base + a.tail, base + a.head});
  }
  inst.positive_arcs_.resize(k);
  inst.negative_arcs_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (bool negated : {false, true}) {
      auto& chain = negated ? inst.negative_arcs_[i] : inst.positive_arcs_[i];
      Vertex from = inst.variable_vertex(i);
      for (std::size_t j = 0; j < p; ++j) {
        const Clause& c = f.clauses()[j];
        for (std::size_t s = 0; s < 3; ++s) {
          if (c[s].variable != i || c[s].negated != negated) continue;
          chain.push_back({from, inst.clause_vertex(j, static_cast<Slot>(s), 1)});
          from = inst.clause_vertex(j, static_cast<Slot>(s), 2);
        }
      }
      arcs.insert(arcs.end(), chain.begin(), chain.end());
    }
  }
  inst.digraph_ = Digraph(n, arcs);
  return inst;
}

namespace {

std::vector<Vertex> parent_array(const OutTree& b, std::size_t n) {
  std::vector<Vertex> parent(n, OutTree::kNoParent);
  for (const Arc& a : b.arcs()) parent[a.head] = a.tail;
  return parent;
}

// Rewrites the parents inside gadget j so that the paths entering at the
// given slots follow `segments`.
void apply_segments(const ReducedInstance& inst, std::size_t j, const std::vector<Path>& segments,
                    std::vector<Vertex>& parent) {
  const Vertex base = inst.clause_vertex(j, Slot::x, 1);
  for (const Path& seg : segments) {
    for (std::size_t t = 0; t + 1 < seg.size(); ++t) parent[base + seg[t + 1]] = base + seg[t];
  }
}

// For gadget j: the slots at which paths enter, and whether each entering
// path's stretch inside the gadget ends at the matching layer-2 vertex.
struct GadgetVisit {
  std::vector<Slot> entered;
  bool compatible = true;
};

GadgetVisit inspect_gadget(const ReducedInstance& inst, std::size_t j, const std::vector<Vertex>& parent) {
  const Vertex base = inst.clause_vertex(j, Slot::x, 1);
  auto inside = [&](Vertex v) { return v >= base && v < base + kGadgetOrder; };
  std::vector<std::vector<Vertex>> children(kGadgetOrder);
  for (Vertex local = 0; local < kGadgetOrder; ++local) {
    Vertex p = parent[base + local];
    if (p != OutTree::kNoParent && inside(p)) children[p - base].push_back(local);
  }
  GadgetVisit visit;
  for (Vertex local = 0; local < kGadgetOrder; ++local) {
    Vertex p = parent[base + local];
    if (p == OutTree::kNoParent || inside(p)) continue;
    if (local >= 3) {
      visit.compatible = false;
      continue;
    }
    Slot s = static_cast<Slot>(local);
    visit.entered.push_back(s);
    Vertex at = local;
    while (children[at].size() == 1) at = children[at].front();
    if (!children[at].empty() || at != gadget_vertex(s, 2)) visit.compatible = false;
  }
  return visit;
}

}  // namespace

OutTree assignment_to_branching(const ReducedInstance& inst, const Assignment& a) {
  const CnfFormula& f = inst.formula();
  if (a.size() != f.var_count()) throw InputError("assignment must give a value to every variable");
  const std::size_t n = inst.digraph().order();
  std::vector<Vertex> parent(n, OutTree::kNoParent);
  for (std::size_t i = 0; i < f.var_count(); ++i) {
    parent[inst.variable_vertex(i)] = inst.root();
    for (const Arc& arc : inst.literal_arcs(i, !a[i])) parent[arc.head] = arc.tail;
  }
  for (std::size_t j = 0; j < f.clauses().size(); ++j) {
    std::vector<Slot> entered;
    for (std::size_t s = 0; s < 3; ++s) {
      const Literal& l = f.clauses()[j][s];
      if (a[l.variable] != l.negated) entered.push_back(static_cast<Slot>(s));
    }
    if (entered.empty()) throw UncoveredClause(j);
    apply_segments(inst, j, gadget_traversal(entered), parent);
  }
  return out_tree_from_parents(parent);
}

bool is_gadget_compatible(const ReducedInstance& inst, const OutTree& b) {
  auto parent = parent_array(b, inst.digraph().order());
  for (std::size_t j = 0; j < inst.clause_count(); ++j) {
    if (!inspect_gadget(inst, j, parent).compatible) return false;
  }
  return true;
}

OutTree repair_to_compatible(const ReducedInstance& inst, const OutTree& b) {
  const std::size_t k = inst.var_count();
  std::size_t leaves = validate_out_branching(inst.digraph(), b);
  if (leaves != k) {
    throw InputError("repair_to_compatible: out-branching has " + std::to_string(leaves) +
                     " leaves, expected " + std::to_string(k));
  }
  auto parent = parent_array(b, inst.digraph().order());
  for (std::size_t j = 0; j < inst.clause_count(); ++j) {
    GadgetVisit visit = inspect_gadget(inst, j, parent);
    if (visit.compatible) continue;
    // Each entering path takes the covering segment of its own slot; a
    // continuation that left from a layer-2 vertex s2 now hangs off the
    // path that entered at s1.
    apply_segments(inst, j, gadget_traversal(visit.entered), parent);
  }
  OutTree repaired = out_tree_from_parents(parent);
  if (validate_out_branching(inst.digraph(), repaired) != k || !is_gadget_compatible(inst, repaired)) {
    throw std::logic_error("repair_to_compatible: rewiring did not yield a compatible k-leaf out-branching");
  }
  return repaired;
}

Assignment decode_assignment(const ReducedInstance& inst, const OutTree& b) {
  OutTree repaired = repair_to_compatible(inst, b);
  Assignment a(inst.var_count(), true);
  for (std::size_t i = 0; i < inst.var_count(); ++i) {
    auto kids = repaired.children(inst.variable_vertex(i));
    if (kids.empty()) continue;
    const auto& negative = inst.literal_arcs(i, true);
    a[i] = !(!negative.empty() && kids.front() == negative.front().head);
  }
  if (!inst.formula().satisfied_by(a)) {
    throw std::logic_error("decode_assignment: decoded assignment does not satisfy the formula");
  }
  return a;
}

PathDecomposition canonical_width1_dpd(const ReducedInstance& inst) {
  PathDecomposition dpd;
  dpd.bags.push_back({inst.root()});
  for (std::size_t i = 0; i < inst.var_count(); ++i) dpd.bags.push_back({inst.variable_vertex(i)});
  for (std::size_t j = 0; j < inst.clause_count(); ++j) {
    auto v = [&](Slot s, int layer) { return inst.clause_vertex(j, s, layer); };
    for (Bag bag : {Bag{v(Slot::z, 1), v(Slot::y, 1)}, Bag{v(Slot::y, 1), v(Slot::x, 1)},
                    Bag{v(Slot::x, 2), v(Slot::y, 2)}, Bag{v(Slot::y, 2), v(Slot::z, 2)}}) {
      std::sort(bag.begin(), bag.end());
      dpd.bags.push_back(std::move(bag));
    }
  }
  return dpd;
}

}  // namespace minlob
