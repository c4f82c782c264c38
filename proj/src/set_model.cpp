#include "flam/set_model.hpp"

#include "flam/error.hpp"
#include "flam/vec_model.hpp"

namespace flam {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const Type& t) {
  if (a != 0 && b > kEnumerationGuard / a) throw GuardError(to_string(t) + " has more than 2^24 elements");
  return a * b;
}

struct Node {
  TermKind kind;
  std::uint32_t child[3] = {0, 0, 0};
  std::size_t index = 0;
  const SetSpace* space = nullptr;  // Lam: its arrow type; App: the function's; Pair/Proj: the product's
};

class Program {
 public:
  Program(const Context& ctx, const TermPtr& t) {
    for (const auto& b : ctx) scope_.push_back(b.type);
    root_ = compile(t).first;
  }

  std::uint64_t run(std::vector<std::uint64_t>& env) const { return eval(root_, env); }

 private:
  const SetSpace* space(const TypePtr& t) {
    spaces_.push_back(std::make_unique<SetSpace>(t));
    return spaces_.back().get();
  }

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
        scope_.push_back(t->annotation());
        auto [body, cod] = compile(t->child(0));
        scope_.pop_back();
        n.child[0] = body;
        type = Type::arrow(t->annotation(), cod);
        n.space = space(type);
        break;
      }
      case TermKind::App: {
        auto [f, ft] = compile(t->child(0));
        auto [a, at] = compile(t->child(1));
        n.child[0] = f;
        n.child[1] = a;
        n.space = space(ft);
        type = ft->codomain();
        break;
      }
      case TermKind::Pair: {
        auto [l, lt] = compile(t->child(0));
        auto [r, rt] = compile(t->child(1));
        n.child[0] = l;
        n.child[1] = r;
        type = Type::prod(lt, rt);
        n.space = space(type);
        break;
      }
      case TermKind::ProjL:
      case TermKind::ProjR: {
        auto [p, pt] = compile(t->child(0));
        n.child[0] = p;
        n.space = space(pt);
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
      case TermKind::If:
        for (std::size_t i = 0; i < 3; ++i) {
          auto [c, ct] = compile(t->child(i));
          n.child[i] = c;
          type = ct;
        }
        break;
      case TermKind::LetStar:
        for (std::size_t i = 0; i < 2; ++i) {
          auto [c, ct] = compile(t->child(i));
          n.child[i] = c;
          type = ct;
        }
        break;
      case TermKind::Zero:
      case TermKind::Sum:
      case TermKind::Scale:
        throw TypeError("the set model only interprets terms without 0, + and scalars");
    }
    nodes_.push_back(n);
    return {static_cast<std::uint32_t>(nodes_.size() - 1), type};
  }

  std::uint64_t eval(std::uint32_t id, std::vector<std::uint64_t>& env) const {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case TermKind::Var:
        return env[env.size() - 1 - n.index];
      case TermKind::Lam: {
        std::uint64_t count = n.space->domain().size();
        std::vector<std::uint64_t> table(count);
        env.push_back(0);
        for (std::uint64_t a = 0; a < count; ++a) {
          env.back() = a;
          table[a] = eval(n.child[0], env);
        }
        env.pop_back();
        return n.space->function_rank(table);
      }
      case TermKind::App: {
        const Node& f = nodes_[n.child[0]];
        if (f.kind == TermKind::Lam) {
          env.push_back(eval(n.child[1], env));
          std::uint64_t v = eval(f.child[0], env);
          env.pop_back();
          return v;
        }
        std::uint64_t fr = eval(n.child[0], env);
        return n.space->apply(fr, eval(n.child[1], env));
      }
      case TermKind::Pair: {
        std::uint64_t l = eval(n.child[0], env);
        return n.space->pair_rank(l, eval(n.child[1], env));
      }
      case TermKind::ProjL:
        return n.space->left_of(eval(n.child[0], env));
      case TermKind::ProjR:
        return n.space->right_of(eval(n.child[0], env));
      case TermKind::Star:
      case TermKind::True:
        return 0;
      case TermKind::False:
        return 1;
      case TermKind::If:
        return eval(n.child[eval(n.child[0], env) == 0 ? 1 : 2], env);
      case TermKind::LetStar:
        eval(n.child[0], env);
        return eval(n.child[1], env);
      default:
        throw InternalError("algebraic node in the set model");
    }
  }

  std::vector<TypePtr> scope_;
  std::vector<Node> nodes_;
  std::vector<std::unique_ptr<SetSpace>> spaces_;
  std::uint32_t root_ = 0;
};

// g(a_1) if x = a_1 else ... else g(a_n), testing with delta_{a_i}.
TermPtr if_chain(const TypePtr& domain, const std::vector<SetElem>& domain_elems,
                 const std::vector<TermPtr>& outputs) {
  TermPtr t = outputs.back();
  for (std::size_t i = outputs.size() - 1; i-- > 0;) {
    t = ite(app(set_synth_delta(domain_elems[i], domain), var(0)), outputs[i], t);
  }
  return t;
}

SetElem curry(const std::vector<SetSpace>& inputs, const SetSpace& output, std::span<const std::uint64_t> table,
              std::size_t level, std::uint64_t prefix) {
  if (level == inputs.size()) return output.unrank(table[prefix]);
  std::vector<SetElem> parts;
  for (std::uint64_t r = 0; r < inputs[level].size(); ++r) {
    parts.push_back(curry(inputs, output, table, level + 1, prefix * inputs[level].size() + r));
  }
  return SetElem::function(std::move(parts));
}

}  // namespace

SetElem SetElem::pair(SetElem l, SetElem r) { return {TypeKind::Prod, false, {std::move(l), std::move(r)}}; }

SetElem SetElem::function(std::vector<SetElem> table) { return {TypeKind::Arrow, false, std::move(table)}; }

SetSpace::SetSpace(const TypePtr& type) : type_(type) {
  switch (type->kind()) {
    case TypeKind::Unit:
      size_ = 1;
      break;
    case TypeKind::Bool:
      size_ = 2;
      break;
    case TypeKind::Prod:
      left_ = std::make_shared<SetSpace>(type->left());
      right_ = std::make_shared<SetSpace>(type->right());
      size_ = checked_mul(left_->size_, right_->size_, *type);
      break;
    case TypeKind::Arrow: {
      left_ = std::make_shared<SetSpace>(type->domain());
      right_ = std::make_shared<SetSpace>(type->codomain());
      size_ = 1;
      if (right_->size_ > 1) {
        for (std::uint64_t i = 0; i < left_->size_; ++i) size_ = checked_mul(size_, right_->size_, *type);
        powers_.resize(left_->size_);
        std::uint64_t p = 1;
        for (std::size_t k = 0; k < powers_.size(); ++k, p *= right_->size_) powers_[k] = p;
      }
      break;
    }
  }
}

std::uint64_t SetSpace::apply(std::uint64_t f, std::uint64_t a) const {
  if (powers_.empty()) return 0;
  return f / powers_[powers_.size() - 1 - a] % right_->size_;
}

std::uint64_t SetSpace::function_rank(std::span<const std::uint64_t> table) const {
  std::uint64_t r = 0;
  if (powers_.empty()) return 0;
  for (std::uint64_t v : table) r = r * right_->size_ + v;
  return r;
}

std::uint64_t SetSpace::rank(const SetElem& e) const {
  if (e.kind != type_->kind()) throw TypeError("element does not belong to " + to_string(type_));
  switch (type_->kind()) {
    case TypeKind::Unit:
      return 0;
    case TypeKind::Bool:
      return e.value ? 0 : 1;
    case TypeKind::Prod:
      return pair_rank(left_->rank(e.parts.at(0)), right_->rank(e.parts.at(1)));
    case TypeKind::Arrow: {
      if (e.parts.size() != left_->size_) throw TypeError("function table has the wrong length");
      std::vector<std::uint64_t> table;
      for (const auto& p : e.parts) table.push_back(right_->rank(p));
      return function_rank(table);
    }
  }
  return 0;
}

SetElem SetSpace::unrank(std::uint64_t r) const {
  switch (type_->kind()) {
    case TypeKind::Unit:
      return SetElem::unit();
    case TypeKind::Bool:
      return SetElem::boolean(r == 0);
    case TypeKind::Prod:
      return SetElem::pair(left_->unrank(left_of(r)), right_->unrank(right_of(r)));
    case TypeKind::Arrow: {
      std::vector<SetElem> parts;
      for (std::uint64_t a = 0; a < left_->size_; ++a) parts.push_back(right_->unrank(apply(r, a)));
      return SetElem::function(std::move(parts));
    }
  }
  return {};
}

SetSpace set_denote_type(const TypePtr& type) { return SetSpace(type); }

std::string set_elem_to_string(const SetElem& e) {
  switch (e.kind) {
    case TypeKind::Unit:
      return "*";
    case TypeKind::Bool:
      return e.value ? "tt" : "ff";
    case TypeKind::Prod:
      return "<" + set_elem_to_string(e.parts[0]) + ", " + set_elem_to_string(e.parts[1]) + ">";
    case TypeKind::Arrow: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.parts.size(); ++i) s += (i ? ", " : "") + set_elem_to_string(e.parts[i]);
      return s + ")";
    }
  }
  return "";
}

std::string set_elem_compact(const SetElem& e) {
  switch (e.kind) {
    case TypeKind::Unit:
      return "*";
    case TypeKind::Bool:
      return e.value ? "tt" : "ff";
    case TypeKind::Prod:
      return "<" + set_elem_compact(e.parts[0]) + "," + set_elem_compact(e.parts[1]) + ">";
    case TypeKind::Arrow: {
      // Functions into a base type print as a word of one letter per input.
      bool word = !e.parts.empty() && (e.parts[0].kind == TypeKind::Bool || e.parts[0].kind == TypeKind::Unit);
      std::string s = word ? "" : "(";
      for (std::size_t i = 0; i < e.parts.size(); ++i) {
        if (word) {
          const SetElem& x = e.parts[i];
          s += x.kind == TypeKind::Unit ? "*" : x.value ? "t" : "f";
          continue;
        }
        if (i) s += ",";
        s += set_elem_compact(e.parts[i]);
      }
      return word ? s : s + ")";
    }
  }
  return "";
}

SetFun::SetFun(Judgment judgment, std::vector<SetSpace> inputs, SetSpace output, std::vector<std::uint64_t> table)
    : judgment_(std::move(judgment)), inputs_(std::move(inputs)), output_(std::move(output)), table_(std::move(table)) {}

std::uint64_t SetFun::tuple_rank(std::span<const std::uint64_t> ranks) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < inputs_.size(); ++i) r = r * inputs_[i].size() + ranks[i];
  return r;
}

SetFun set_denote(const Judgment& j) {
  Program prog(j.context, j.term);
  std::vector<SetSpace> inputs;
  std::uint64_t entries = 1;
  for (const auto& b : j.context) {
    inputs.emplace_back(b.type);
    entries = checked_mul(entries, inputs.back().size(), *b.type);
  }
  SetSpace output(j.type);
  std::vector<std::uint64_t> table(entries);
  std::vector<std::uint64_t> env(inputs.size());
  for (std::uint64_t t = 0; t < entries; ++t) {
    std::uint64_t rest = t;
    for (std::size_t i = inputs.size(); i-- > 0;) {
      env[i] = rest % inputs[i].size();
      rest /= inputs[i].size();
    }
    table[t] = prog.run(env);
  }
  return SetFun(j, std::move(inputs), std::move(output), std::move(table));
}

std::uint64_t set_denote_closed(const TermPtr& t) {
  Program prog({}, t);
  std::vector<std::uint64_t> env;
  return prog.run(env);
}

bool set_equiv(const Judgment& a, const Judgment& b) {
  bool same = a.context.size() == b.context.size() && type_equal(a.type, b.type);
  for (std::size_t i = 0; same && i < a.context.size(); ++i) {
    same = type_equal(a.context[i].type, b.context[i].type);
  }
  if (!same) throw TypeError("judgments have different contexts or types");
  return set_denote(a).table() == set_denote(b).table();
}

TermPtr set_synth_point(const SetElem& a, const TypePtr& type) {
  switch (type->kind()) {
    case TypeKind::Unit:
      return star();
    case TypeKind::Bool:
      return a.value ? tt() : ff();
    case TypeKind::Prod:
      return pair(set_synth_point(a.parts.at(0), type->left()), set_synth_point(a.parts.at(1), type->right()));
    case TypeKind::Arrow: {
      SetSpace dom(type->domain());
      std::vector<SetElem> elems;
      std::vector<TermPtr> outputs;
      for (std::uint64_t r = 0; r < dom.size(); ++r) {
        elems.push_back(dom.unrank(r));
        outputs.push_back(set_synth_point(a.parts.at(r), type->codomain()));
      }
      return lam(type->domain(), if_chain(type->domain(), elems, outputs), "x");
    }
  }
  return nullptr;
}

TermPtr set_synth_delta(const SetElem& a, const TypePtr& type) {
  switch (type->kind()) {
    case TypeKind::Unit:
      return lam(type, tt(), "x");
    case TypeKind::Bool:
      return a.value ? lam(type, var(0), "x") : lam(type, ite(var(0), ff(), tt()), "x");
    case TypeKind::Prod: {
      TermPtr l = app(set_synth_delta(a.parts.at(0), type->left()), proj_l(var(0)));
      TermPtr r = app(set_synth_delta(a.parts.at(1), type->right()), proj_r(var(0)));
      return lam(type, ite(l, r, ff()), "x");
    }
    case TypeKind::Arrow: {
      // f equals g iff f agrees with g on every point of the domain.
      SetSpace dom(type->domain());
      TermPtr t = tt();
      for (std::uint64_t r = dom.size(); r-- > 0;) {
        TermPtr point = set_synth_point(dom.unrank(r), type->domain());
        TermPtr test = app(set_synth_delta(a.parts.at(r), type->codomain()), app(var(0), point));
        t = ite(test, t, ff());
      }
      return lam(type, t, "f");
    }
  }
  return nullptr;
}

TermPtr set_synth_table(const Context& ctx, const TypePtr& output, std::span<const std::uint64_t> table) {
  std::vector<SetSpace> inputs;
  TypePtr curried = output;
  for (std::size_t i = ctx.size(); i-- > 0;) curried = Type::arrow(ctx[i].type, curried);
  for (const auto& b : ctx) inputs.emplace_back(b.type);
  SetSpace out(output);
  SetElem g = curry(inputs, out, table, 0, 0);
  std::vector<TermPtr> args;
  for (std::size_t i = ctx.size(); i-- > 0;) args.push_back(var(i));
  return app_n(set_synth_point(g, curried), args);
}

TermPtr set_synth_function(const SetFun& f) {
  return set_synth_table(f.judgment().context, f.output().type(), f.table());
}

}  // namespace flam
