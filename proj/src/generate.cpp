#include "flam/generate.hpp"

#include <random>

namespace flam {

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const GenOptions& opts) : rng_(seed), opts_(opts) {
    for (const auto& b : opts.context) scope_.push_back(b.type);
    pool_ = opts.pool;
    if (pool_.empty()) {
      auto u = Type::unit(), b = Type::boolean();
      pool_ = {u, b, Type::prod(u, b), Type::arrow(u, b), Type::arrow(b, u)};
    }
  }

  TermPtr gen(const TypePtr& t, std::size_t budget) {
    if (budget <= 1) return leaf(t);
    // 0-2 intro, 3 variable, 4 app, 5 projection, 6 if, 7 let, 8-9 algebraic
    for (int attempt = 0; attempt < 8; ++attempt) {
      switch (pick(opts_.algebraic ? 10 : 8)) {
        case 0:
        case 1:
        case 2:
          return intro(t, budget);
        case 3:
          if (auto v = variable(t)) return v;
          break;
        case 4: {
          auto [l, r] = split(budget - 1);
          TypePtr a = from_pool();
          return app(gen(Type::arrow(a, t), l), gen(a, r));
        }
        case 5: {
          TypePtr other = from_pool();
          if (pick(2) == 0) return proj_l(gen(Type::prod(t, other), budget - 1));
          return proj_r(gen(Type::prod(other, t), budget - 1));
        }
        case 6: {
          std::size_t rest = budget - 1;
          std::size_t c = 1 + pick(std::max<std::size_t>(rest / 3, 1));
          auto [l, r] = split(rest > c ? rest - c : 2);
          return ite(gen(Type::boolean(), c), gen(t, l), gen(t, r));
        }
        case 7: {
          auto [l, r] = split(budget - 1);
          return let_star(gen(Type::unit(), l), gen(t, r));
        }
        case 8: {
          auto [l, r] = split(budget - 1);
          return sum(gen(t, l), gen(t, r));
        }
        case 9:
          if (pick(4) == 0) return zero(t);
          return scale(static_cast<Residue>(pick(opts_.field)), gen(t, budget - 1));
      }
    }
    return intro(t, budget);
  }

 private:
  std::size_t pick(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(rng_() % n); }

  TypePtr from_pool() { return pool_[pick(pool_.size())]; }

  std::pair<std::size_t, std::size_t> split(std::size_t total) {
    if (total < 2) return {1, 1};
    std::size_t l = 1 + pick(total - 1);
    return {l, total - l};
  }

  TermPtr variable(const TypePtr& t) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
      if (type_equal(scope_[scope_.size() - 1 - i], t)) hits.push_back(i);
    }
    if (hits.empty()) return nullptr;
    return var(hits[pick(hits.size())]);
  }

  TermPtr intro(const TypePtr& t, std::size_t budget) {
    switch (t->kind()) {
      case TypeKind::Unit:
      case TypeKind::Bool:
        return leaf(t);
      case TypeKind::Prod: {
        auto [l, r] = split(budget - 1);
        return pair(gen(t->left(), l), gen(t->right(), r));
      }
      case TypeKind::Arrow: {
        scope_.push_back(t->domain());
        TermPtr body = gen(t->codomain(), budget - 1);
        scope_.pop_back();
        return lam(t->domain(), body, binder_name(t->domain()));
      }
    }
    return leaf(t);
  }

  // Smallest inhabitant, preferring variables in scope.
  TermPtr leaf(const TypePtr& t) {
    if (pick(3) == 0) {
      if (auto v = variable(t)) return v;
    }
    if (opts_.algebraic && pick(5) == 0) return zero(t);
    switch (t->kind()) {
      case TypeKind::Unit:
        return star();
      case TypeKind::Bool:
        return pick(2) == 0 ? tt() : ff();
      case TypeKind::Prod:
        return pair(leaf(t->left()), leaf(t->right()));
      case TypeKind::Arrow: {
        scope_.push_back(t->domain());
        TermPtr body = leaf(t->codomain());
        scope_.pop_back();
        return lam(t->domain(), body, binder_name(t->domain()));
      }
    }
    return star();
  }

  static std::string binder_name(const TypePtr& t) { return t->is(TypeKind::Arrow) ? "f" : "x"; }

  std::mt19937_64 rng_;
  const GenOptions& opts_;
  std::vector<TypePtr> pool_;
  std::vector<TypePtr> scope_;
};

}  // namespace

TermPtr gen_term(std::uint64_t seed, const TypePtr& target, std::size_t size, const GenOptions& opts) {
  return Generator(seed, opts).gen(target, size);
}

TypePtr gen_type(std::uint64_t seed, std::size_t depth) {
  std::mt19937_64 rng(seed);
  auto go = [&](auto&& self, std::size_t d) -> TypePtr {
    std::size_t choice = d == 0 ? rng() % 2 : rng() % 4;
    switch (choice) {
      case 0:
        return Type::unit();
      case 1:
        return Type::boolean();
      case 2: {
        TypePtr l = self(self, d - 1);
        return Type::prod(l, self(self, d - 1));
      }
      default: {
        TypePtr l = self(self, d - 1);
        return Type::arrow(l, self(self, d - 1));
      }
    }
  };
  return go(go, depth);
}

}  // namespace flam
