#include "flam/vec_model.hpp"

#include <sstream>

#include "flam/error.hpp"

namespace flam {

namespace {

constexpr std::size_t kDimGuard = std::size_t{1} << 26;
constexpr std::size_t kUnsized = static_cast<std::size_t>(-1);

std::size_t type_dim(const Type& t, const Field& field);

// p^n, or 0 once it passes the guard.
std::uint64_t guarded_power(std::uint64_t p, std::size_t n) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    v *= p;
    if (v > kEnumerationGuard) return 0;
  }
  return v;
}

std::size_t type_dim(const Type& t, const Field& field) {
  switch (t.kind()) {
    case TypeKind::Unit:
      return 1;
    case TypeKind::Bool:
      return 2;
    case TypeKind::Prod: {
      std::size_t d = type_dim(*t.left(), field) + type_dim(*t.right(), field);
      if (d > kDimGuard) throw GuardError("dimension of " + to_string(t) + " is too large");
      return d;
    }
    case TypeKind::Arrow: {
      std::uint64_t n = guarded_power(field.modulus(), type_dim(*t.domain(), field));
      if (n == 0) throw GuardError("domain of " + to_string(t) + " has too many vectors to enumerate");
      std::size_t cod = type_dim(*t.codomain(), field);
      if (cod != 0 && n > kDimGuard / cod) throw GuardError("dimension of " + to_string(t) + " is too large");
      return static_cast<std::size_t>(n) * cod;
    }
  }
  return 0;
}

void check_shape(const SemVec& u, const SemVec& v) {
  if (!type_equal(u.type, v.type) || u.coeffs.size() != v.coeffs.size()) {
    throw TypeError("vectors of " + to_string(u.type) + " and " + to_string(v.type) + " do not combine");
  }
}

// Judgments are compiled once into a flat tree annotated with the sizes
// evaluation needs, then evaluated at every tuple of context vectors.
struct Node {
  TermKind kind;
  std::uint32_t child[3] = {0, 0, 0};
  std::size_t index = 0;
  Residue coeff = 0;
  std::size_t dim = 0;       // dimension of the node's type
  std::size_t left_dim = 0;  // Pair: left part; ProjL/ProjR: left part of the operand
  const VecSpace* domain = nullptr;  // Lam
};

class Program {
 public:
  Program(const Context& ctx, const TermPtr& t, const Field& field) : field_(field) {
    for (const auto& b : ctx) scope_.push_back(b.type);
    root_ = compile(t).first;
  }

  std::vector<Residue> run(std::vector<std::vector<Residue>>& env) const { return eval(root_, env); }

 private:
  std::pair<std::uint32_t, TypePtr> compile(const TermPtr& t) {
    Node n;
    n.kind = t->kind();
    TypePtr type;
    switch (t->kind()) {
      case TermKind::Var:
        n.index = t->index();
        if (n.index >= scope_.size()) throw TypeError("unbound variable");
        type = scope_[scope_.size() - 1 - n.index];
        break;
      case TermKind::Lam: {
        spaces_.push_back(std::make_unique<VecSpace>(t->annotation(), field_));
        n.domain = spaces_.back().get();
        scope_.push_back(t->annotation());
        auto [body, cod] = compile(t->child(0));
        scope_.pop_back();
        n.child[0] = body;
        type = Type::arrow(t->annotation(), cod);
        break;
      }
      case TermKind::App: {
        auto [f, ft] = compile(t->child(0));
        auto [a, at] = compile(t->child(1));
        n.child[0] = f;
        n.child[1] = a;
        type = ft->codomain();
        break;
      }
      case TermKind::Pair: {
        auto [l, lt] = compile(t->child(0));
        auto [r, rt] = compile(t->child(1));
        n.child[0] = l;
        n.child[1] = r;
        n.left_dim = nodes_[l].dim;
        type = Type::prod(lt, rt);
        break;
      }
      case TermKind::ProjL:
      case TermKind::ProjR: {
        auto [p, pt] = compile(t->child(0));
        n.child[0] = p;
        n.left_dim = type_dim(*pt->left(), field_);
        type = t->is(TermKind::ProjL) ? pt->left() : pt->right();
        break;
      }
      case TermKind::Star:
        type = Type::unit();
        break;
      case TermKind::True:
      case TermKind::False:
        type = Type::boolean();
        break;
      case TermKind::If: {
        for (std::size_t i = 0; i < 3; ++i) {
          auto [c, ct] = compile(t->child(i));
          n.child[i] = c;
          type = ct;
        }
        break;
      }
      case TermKind::LetStar:
      case TermKind::Sum: {
        for (std::size_t i = 0; i < 2; ++i) {
          auto [c, ct] = compile(t->child(i));
          n.child[i] = c;
          type = ct;
        }
        break;
      }
      case TermKind::Zero:
        type = t->annotation();
        break;
      case TermKind::Scale: {
        auto [c, ct] = compile(t->child(0));
        n.child[0] = c;
        n.coeff = field_.reduce(t->coeff());
        type = ct;
        break;
      }
    }
    // A lambda that is only ever applied never needs its own dimension, so
    // oversized types are refused at evaluation time instead.
    try {
      n.dim = type_dim(*type, field_);
    } catch (const GuardError&) {
      n.dim = kUnsized;
    }
    nodes_.push_back(n);
    return {static_cast<std::uint32_t>(nodes_.size() - 1), type};
  }

  void add_scaled(std::vector<Residue>& acc, Residue a, const std::vector<Residue>& v) const {
    if (a == 0) return;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = field_.add(acc[i], field_.mul(a, v[i]));
  }

  std::vector<Residue> eval(std::uint32_t id, std::vector<std::vector<Residue>>& env) const {
    const Node& n = nodes_[id];
    if (n.dim == kUnsized) throw GuardError("a subterm has a type too large to tabulate");
    switch (n.kind) {
      case TermKind::Var:
        return env[env.size() - 1 - n.index];
      case TermKind::Lam: {
        std::uint64_t count = n.domain->vcount();
        std::size_t m = nodes_[n.child[0]].dim;
        std::vector<Residue> out(count * m);
        env.emplace_back(n.domain->dim());
        for (std::uint64_t r = 0; r < count; ++r) {
          n.domain->unrank_into(r, env.back());
          std::vector<Residue> v = eval(n.child[0], env);
          std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(r * m));
        }
        env.pop_back();
        return out;
      }
      case TermKind::App: {
        const Node& f = nodes_[n.child[0]];
        if (f.kind == TermKind::Lam) {
          // Looking a lambda up at b_u is evaluating its body at u.
          env.push_back(eval(n.child[1], env));
          std::vector<Residue> v = eval(f.child[0], env);
          env.pop_back();
          return v;
        }
        std::vector<Residue> fv = eval(n.child[0], env);
        std::vector<Residue> a = eval(n.child[1], env);
        std::uint64_t r = 0;
        for (Residue c : a) r = r * field_.modulus() + c;
        auto begin = fv.begin() + static_cast<std::ptrdiff_t>(r * n.dim);
        return std::vector<Residue>(begin, begin + static_cast<std::ptrdiff_t>(n.dim));
      }
      case TermKind::Pair: {
        std::vector<Residue> out = eval(n.child[0], env);
        std::vector<Residue> r = eval(n.child[1], env);
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
      case TermKind::ProjL: {
        std::vector<Residue> v = eval(n.child[0], env);
        v.resize(n.left_dim);
        return v;
      }
      case TermKind::ProjR: {
        std::vector<Residue> v = eval(n.child[0], env);
        return std::vector<Residue>(v.begin() + static_cast<std::ptrdiff_t>(n.left_dim), v.end());
      }
      case TermKind::Star:
        return {1};
      case TermKind::True:
        return {1, 0};
      case TermKind::False:
        return {0, 1};
      case TermKind::If: {
        std::vector<Residue> c = eval(n.child[0], env);
        std::vector<Residue> out(n.dim, 0);
        if (c[0] != 0) add_scaled(out, c[0], eval(n.child[1], env));
        if (c[1] != 0) add_scaled(out, c[1], eval(n.child[2], env));
        return out;
      }
      case TermKind::LetStar: {
        Residue a = eval(n.child[0], env)[0];
        std::vector<Residue> out(n.dim, 0);
        if (a != 0) add_scaled(out, a, eval(n.child[1], env));
        return out;
      }
      case TermKind::Zero:
        return std::vector<Residue>(n.dim, 0);
      case TermKind::Sum: {
        std::vector<Residue> out = eval(n.child[0], env);
        add_scaled(out, 1, eval(n.child[1], env));
        return out;
      }
      case TermKind::Scale: {
        std::vector<Residue> out(n.dim, 0);
        if (n.coeff != 0) add_scaled(out, n.coeff, eval(n.child[0], env));
        return out;
      }
    }
    return {};
  }

  Field field_;
  std::vector<TypePtr> scope_;
  std::vector<Node> nodes_;
  std::vector<std::unique_ptr<VecSpace>> spaces_;
  std::uint32_t root_ = 0;
};

}  // namespace

VecSpace::VecSpace(const TypePtr& type, const Field& field)
    : type_(type), field_(field), dim_(type_dim(*type, field)), vcount_(guarded_power(field.modulus(), dim_)) {}

std::uint64_t VecSpace::vcount() const {
  if (vcount_ == 0) {
    throw GuardError(to_string(type_) + " over F_" + std::to_string(field_.modulus()) +
                     " has more than 2^24 vectors");
  }
  return vcount_;
}

std::uint64_t VecSpace::rank(std::span<const Residue> coords) const {
  vcount();
  std::uint64_t r = 0;
  for (Residue c : coords) r = r * field_.modulus() + c;
  return r;
}

std::vector<Residue> VecSpace::unrank(std::uint64_t r) const {
  std::vector<Residue> out(dim_);
  unrank_into(r, out);
  return out;
}

void VecSpace::unrank_into(std::uint64_t r, std::span<Residue> out) const {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Residue>(r % field_.modulus());
    r /= field_.modulus();
  }
}

VecSpace vec_denote_type(const TypePtr& type, const Field& field) {
  VecSpace s(type, field);
  s.vcount();
  return s;
}

SemVec scalar_vec(Residue alpha) { return {Type::unit(), {alpha}}; }

SemVec bool_vec(Residue alpha, Residue beta) { return {Type::boolean(), {alpha, beta}}; }

SemVec pair_vec(const SemVec& l, const SemVec& r) {
  SemVec out{Type::prod(l.type, r.type), l.coeffs};
  out.coeffs.insert(out.coeffs.end(), r.coeffs.begin(), r.coeffs.end());
  return out;
}

SemVec fun_vec(const TypePtr& domain, const std::vector<SemVec>& table, const Field& field) {
  VecSpace dom(domain, field);
  if (table.size() != dom.vcount() || table.empty()) {
    throw TypeError("function table must have one entry per vector of " + to_string(domain));
  }
  SemVec out{Type::arrow(domain, table[0].type), {}};
  for (const auto& v : table) {
    check_shape(table[0], v);
    out.coeffs.insert(out.coeffs.end(), v.coeffs.begin(), v.coeffs.end());
  }
  return out;
}

SemVec vec_left(const SemVec& v, const Field& field) {
  if (!v.type->is(TypeKind::Prod)) throw TypeError("left component of a non-pair vector");
  std::size_t d = type_dim(*v.type->left(), field);
  return {v.type->left(), std::vector<Residue>(v.coeffs.begin(), v.coeffs.begin() + static_cast<std::ptrdiff_t>(d))};
}

SemVec vec_right(const SemVec& v, const Field& field) {
  if (!v.type->is(TypeKind::Prod)) throw TypeError("right component of a non-pair vector");
  std::size_t d = type_dim(*v.type->left(), field);
  return {v.type->right(), std::vector<Residue>(v.coeffs.begin() + static_cast<std::ptrdiff_t>(d), v.coeffs.end())};
}

SemVec vec_apply(const SemVec& f, const SemVec& u, const Field& field) {
  if (!f.type->is(TypeKind::Arrow) || !type_equal(f.type->domain(), u.type)) {
    throw TypeError("cannot apply a vector of " + to_string(f.type) + " to one of " + to_string(u.type));
  }
  std::uint64_t r = VecSpace(u.type, field).rank(u.coeffs);
  std::size_t m = type_dim(*f.type->codomain(), field);
  auto begin = f.coeffs.begin() + static_cast<std::ptrdiff_t>(r * m);
  return {f.type->codomain(), std::vector<Residue>(begin, begin + static_cast<std::ptrdiff_t>(m))};
}

SemVec vec_add(const SemVec& u, const SemVec& v, const Field& field) {
  check_shape(u, v);
  SemVec out = u;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = field.add(u.coeffs[i], v.coeffs[i]);
  return out;
}

SemVec vec_scale(Residue alpha, const SemVec& v, const Field& field) {
  SemVec out = v;
  Residue a = field.reduce(alpha);
  for (auto& c : out.coeffs) c = field.mul(a, c);
  return out;
}

SemVec vec_zero(const TypePtr& type, const Field& field) {
  return {type, std::vector<Residue>(type_dim(*type, field), 0)};
}

std::string vec_to_string(const SemVec& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.coeffs.size(); ++i) os << (i ? " " : "") << v.coeffs[i];
  os << ']';
  return os.str();
}

KFun::KFun(Judgment judgment, Field field, std::vector<VecSpace> inputs, VecSpace output,
           std::vector<Residue> table)
    : judgment_(std::move(judgment)),
      field_(field),
      inputs_(std::move(inputs)),
      output_(std::move(output)),
      table_(std::move(table)) {}

SemVec KFun::at(std::uint64_t tuple_rank) const {
  auto e = entry(tuple_rank);
  return {output_.type(), std::vector<Residue>(e.begin(), e.end())};
}

std::uint64_t KFun::tuple_rank(std::span<const std::uint64_t> ranks) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < inputs_.size(); ++i) r = r * inputs_[i].vcount() + ranks[i];
  return r;
}

KFun vec_denote(const Judgment& j, const Field& field) {
  Program prog(j.context, j.term, field);
  std::vector<VecSpace> inputs;
  std::uint64_t entries = 1;
  for (const auto& b : j.context) {
    inputs.emplace_back(b.type, field);
    entries *= inputs.back().vcount();
    if (entries > kEnumerationGuard) throw GuardError("too many context tuples to tabulate");
  }
  VecSpace output(j.type, field);
  if (output.dim() != 0 && entries > kDimGuard / output.dim()) throw GuardError("denotation table is too large");

  std::vector<Residue> table(entries * output.dim());
  std::vector<std::vector<Residue>> env;
  for (const auto& s : inputs) env.emplace_back(s.dim());
  for (std::uint64_t t = 0; t < entries; ++t) {
    // The last variable is the least significant digit of the tuple rank.
    std::uint64_t rest = t;
    for (std::size_t i = inputs.size(); i-- > 0;) {
      inputs[i].unrank_into(rest % inputs[i].vcount(), env[i]);
      rest /= inputs[i].vcount();
    }
    std::vector<Residue> v = prog.run(env);
    std::copy(v.begin(), v.end(), table.begin() + static_cast<std::ptrdiff_t>(t * output.dim()));
  }
  return KFun(j, field, std::move(inputs), std::move(output), std::move(table));
}

SemVec vec_denote_closed(const TermPtr& t, const Field& field) {
  Program prog({}, t, field);
  std::vector<std::vector<Residue>> env;
  return {typecheck({}, t, field), prog.run(env)};
}

bool vec_equiv(const Judgment& a, const Judgment& b, const Field& field) {
  bool same = a.context.size() == b.context.size() && type_equal(a.type, b.type);
  for (std::size_t i = 0; same && i < a.context.size(); ++i) {
    same = type_equal(a.context[i].type, b.context[i].type);
  }
  if (!same) throw TypeError("judgments have different contexts or types");
  return vec_denote(a, field).table() == vec_denote(b, field).table();
}

Matrix function_matrix(const SemVec& f, const Field& field) {
  if (!f.type->is(TypeKind::Arrow)) throw TypeError("matrix of a non-function vector");
  std::size_t rows = type_dim(*f.type->codomain(), field);
  std::size_t cols = rows == 0 ? 0 : f.coeffs.size() / rows;
  Matrix m(rows, std::vector<Residue>(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = f.coeffs[j * rows + i];
  }
  return m;
}

Matrix to_matrix(const KFun& den) {
  if (!den.judgment().context.empty()) throw TypeError("matrix export needs a closed judgment");
  if (!den.output().type()->is(TypeKind::Arrow)) throw TypeError("matrix export needs a function type");
  return function_matrix(den.at(0), den.field());
}

std::string matrix_to_text(const Matrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

VecSetMap embed_to_set(const KFun& den) {
  VecSetMap out{den.inputs(), den.output(), {}};
  out.table.reserve(den.entries());
  for (std::uint64_t t = 0; t < den.entries(); ++t) out.table.push_back(den.output().rank(den.entry(t)));
  return out;
}

}  // namespace flam
