#include "alcqi/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "alcqi/errors.hpp"
#include "alcqi/problem.hpp"

namespace alcqi {

bool Interpretation::has_edge(const Role& role, int from, int to) const {
  return ((neighbors(role, from) >> to) & 1U) != 0;
}

void Interpretation::add_edge(const std::string& role, int from, int to) {
  auto& succ = role_extensions[role];
  succ.resize(static_cast<std::size_t>(domain_size), 0);
  succ[static_cast<std::size_t>(from)] |= 1U << to;
}

std::uint32_t Interpretation::neighbors(const Role& role, int x) const {
  auto it = role_extensions.find(role.base);
  if (it == role_extensions.end()) return 0;
  const auto& succ = it->second;
  if (!role.inverted) return static_cast<std::size_t>(x) < succ.size() ? succ[x] : 0;
  std::uint32_t out = 0;
  for (std::size_t y = 0; y < succ.size(); ++y) {
    if ((succ[y] >> x) & 1U) out |= 1U << y;
  }
  return out;
}

std::string dump(const Interpretation& i) {
  std::string out = "domain: " + std::to_string(i.domain_size) + "\n";
  for (const auto& [name, mask] : i.concept_extensions) {
    out += "  " + name + " = {";
    bool first = true;
    for (int x = 0; x < i.domain_size; ++x) {
      if ((mask >> x) & 1U) {
        out += (first ? "" : ", ") + std::to_string(x);
        first = false;
      }
    }
    out += "}\n";
  }
  for (const auto& [name, succ] : i.role_extensions) {
    out += "  " + name + " = {";
    bool first = true;
    for (std::size_t x = 0; x < succ.size(); ++x) {
      for (int y = 0; y < i.domain_size; ++y) {
        if ((succ[x] >> y) & 1U) {
          out += (first ? "(" : ", (") + std::to_string(x) + "," + std::to_string(y) + ")";
          first = false;
        }
      }
    }
    out += "}\n";
  }
  return out;
}

bool eval(const Interpretation& i, const Concept& c, int element) {
  switch (c.kind()) {
    case ConceptKind::Top: return true;
    case ConceptKind::Bottom: return false;
    case ConceptKind::Atomic:
    case ConceptKind::NegatedAtomic: {
      auto it = i.concept_extensions.find(c.name());
      const bool in = it != i.concept_extensions.end() && ((it->second >> element) & 1U);
      return c.kind() == ConceptKind::Atomic ? in : !in;
    }
    case ConceptKind::Not: return !eval(i, c.operand(), element);
    case ConceptKind::And:
      return std::all_of(c.operands().begin(), c.operands().end(),
                         [&](const Concept& op) { return eval(i, op, element); });
    case ConceptKind::Or:
      return std::any_of(c.operands().begin(), c.operands().end(),
                         [&](const Concept& op) { return eval(i, op, element); });
    case ConceptKind::AtMost:
    case ConceptKind::AtLeast: {
      std::int64_t count = 0;
      for (int y = 0; y < i.domain_size; ++y) {
        if (i.has_edge(c.role(), element, y) && eval(i, c.filler(), y)) ++count;
      }
      return c.kind() == ConceptKind::AtMost ? count <= c.bound() : count >= c.bound();
    }
  }
  return false;
}

namespace {

// Concepts flattened into a straight-line program over extension bitmasks.
class Program {
 public:
  enum class Op : std::uint8_t { Top, Bottom, Atom, NegAtom, Not, And, Or, AtMost, AtLeast };

  struct Instr {
    Op op;
    std::size_t index = 0;  // atom or role-slot index
    std::int64_t bound = 0;
    std::vector<std::size_t> args;
  };

  Program(const std::vector<std::string>& concepts, const std::vector<std::string>& roles)
      : concepts_(concepts), roles_(roles) {}

  std::size_t compile(const Concept& c) {
    for (std::size_t k = 0; k < sources_.size(); ++k) {
      if (sources_[k] == c) return k;
    }
    Instr in{Op::Top, 0, 0, {}};
    switch (c.kind()) {
      case ConceptKind::Top: in.op = Op::Top; break;
      case ConceptKind::Bottom: in.op = Op::Bottom; break;
      case ConceptKind::Atomic:
      case ConceptKind::NegatedAtomic:
        in.op = c.kind() == ConceptKind::Atomic ? Op::Atom : Op::NegAtom;
        in.index = index_of(concepts_, c.name());
        break;
      case ConceptKind::Not:
        in.op = Op::Not;
        in.args.push_back(compile(c.operand()));
        break;
      case ConceptKind::And:
      case ConceptKind::Or:
        in.op = c.kind() == ConceptKind::And ? Op::And : Op::Or;
        for (const auto& op : c.operands()) in.args.push_back(compile(op));
        break;
      case ConceptKind::AtMost:
      case ConceptKind::AtLeast:
        in.op = c.kind() == ConceptKind::AtMost ? Op::AtMost : Op::AtLeast;
        in.bound = c.bound();
        in.index = 2 * index_of(roles_, c.role().base) + (c.role().inverted ? 1 : 0);
        in.args.push_back(compile(c.filler()));
        break;
    }
    code_.push_back(std::move(in));
    sources_.push_back(c);
    return code_.size() - 1;
  }

  std::size_t size() const { return code_.size(); }

  // Evaluates instructions [from, to). `neighbors[slot * n + x]`, with slot
  // 2r for role r and 2r+1 for its inverse.
  void run(std::size_t from, std::size_t to, int n, const std::uint32_t* atoms,
           const std::uint32_t* neighbors, std::uint32_t* out) const {
    const std::uint32_t full = (1U << n) - 1;
    for (std::size_t k = from; k < to; ++k) {
      const auto& in = code_[k];
      std::uint32_t v = 0;
      switch (in.op) {
        case Op::Top: v = full; break;
        case Op::Bottom: v = 0; break;
        case Op::Atom: v = atoms[in.index]; break;
        case Op::NegAtom: v = ~atoms[in.index] & full; break;
        case Op::Not: v = ~out[in.args[0]] & full; break;
        case Op::And:
          v = full;
          for (auto a : in.args) v &= out[a];
          break;
        case Op::Or:
          for (auto a : in.args) v |= out[a];
          break;
        case Op::AtMost:
        case Op::AtLeast: {
          const auto filler = out[in.args[0]];
          const auto* nb = neighbors + in.index * static_cast<std::size_t>(n);
          for (int x = 0; x < n; ++x) {
            const auto count = std::popcount(nb[x] & filler);
            const bool ok = in.op == Op::AtMost ? count <= in.bound : count >= in.bound;
            if (ok) v |= 1U << x;
          }
          break;
        }
      }
      out[k] = v;
    }
  }

 private:
  static std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
  }

  const std::vector<std::string>& concepts_;
  const std::vector<std::string>& roles_;
  std::vector<Instr> code_;
  std::vector<Concept> sources_;
};

// Role structure code: bit (r * n + x) * n + y set iff (x, y) ∈ role r.
std::uint64_t permute_code(std::uint64_t code, int n, std::size_t n_roles, const int* perm) {
  std::uint64_t out = 0;
  for (std::size_t r = 0; r < n_roles; ++r) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const auto bit = (r * n + x) * n + y;
        if ((code >> bit) & 1U) out |= std::uint64_t{1} << ((r * n + perm[x]) * n + perm[y]);
      }
    }
  }
  return out;
}

bool is_canonical(std::uint64_t code, int n, std::size_t n_roles,
                  const std::vector<std::vector<int>>& perms) {
  for (const auto& p : perms) {
    if (permute_code(code, n, n_roles, p.data()) < code) return false;
  }
  return true;
}

}  // namespace

ModelSearch find_model(const Concept& goal, const Concept& axiom, int max_domain,
                       const OracleLimits& limits) {
  const auto sig = signature_of({goal, axiom});
  if (sig.concepts.size() > limits.max_concepts || sig.roles.size() > limits.max_roles ||
      max_domain > limits.max_domain) {
    throw OracleRefusal("model search refused: " + std::to_string(sig.concepts.size()) +
                        " concept names, " + std::to_string(sig.roles.size()) +
                        " roles, domain " + std::to_string(max_domain) + " exceed the guard");
  }
  const std::vector<std::string> concepts(sig.concepts.begin(), sig.concepts.end());
  const std::vector<std::string> roles(sig.roles.begin(), sig.roles.end());

  Program prog(concepts, roles);
  const auto g_index = prog.compile(axiom);
  const auto g_end = prog.size();
  const auto e_index = prog.compile(goal);

  const auto n_concepts = concepts.size();
  const auto n_roles = roles.size();
  std::vector<std::uint32_t> values(prog.size());
  ModelSearch result;

  for (int n = 1; n <= max_domain; ++n) {
    const std::uint32_t full = (1U << n) - 1;
    std::vector<std::vector<int>> perms;
    {
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
    }
    const auto role_bits = n_roles * static_cast<std::size_t>(n * n);
    const auto atom_bits = n_concepts * static_cast<std::size_t>(n);
    std::vector<std::uint32_t> neighbors(2 * n_roles * n, 0);
    std::vector<std::uint32_t> atoms(n_concepts, 0);

    for (std::uint64_t code = 0; code < (std::uint64_t{1} << role_bits); ++code) {
      if (!is_canonical(code, n, n_roles, perms)) continue;
      std::fill(neighbors.begin(), neighbors.end(), 0);
      for (std::size_t r = 0; r < n_roles; ++r) {
        for (int x = 0; x < n; ++x) {
          for (int y = 0; y < n; ++y) {
            if ((code >> ((r * n + x) * n + y)) & 1U) {
              neighbors[(2 * r) * n + x] |= 1U << y;
              neighbors[(2 * r + 1) * n + y] |= 1U << x;
            }
          }
        }
      }
      for (std::uint64_t acode = 0; acode < (std::uint64_t{1} << atom_bits); ++acode) {
        for (std::size_t a = 0; a < n_concepts; ++a) {
          atoms[a] = static_cast<std::uint32_t>(acode >> (a * n)) & full;
        }
        prog.run(0, g_end, n, atoms.data(), neighbors.data(), values.data());
        if (values[g_index] != full) continue;
        prog.run(g_end, prog.size(), n, atoms.data(), neighbors.data(), values.data());
        if (values[e_index] == 0) continue;

        Interpretation model;
        model.domain_size = n;
        for (std::size_t a = 0; a < n_concepts; ++a) model.concept_extensions[concepts[a]] = atoms[a];
        for (std::size_t r = 0; r < n_roles; ++r) {
          auto& succ = model.role_extensions[roles[r]];
          succ.assign(static_cast<std::size_t>(n), 0);
          for (int x = 0; x < n; ++x) succ[x] = neighbors[(2 * r) * n + x];
        }
        result.model = std::move(model);
        return result;
      }
    }
    result.searched_up_to = n;
  }
  return result;
}

}  // namespace alcqi
