#include <type_traits>

#include "tcat/value.hpp"

namespace tcat {

namespace {

bool is_glued(const Val& v) {
  auto* n = std::get_if<val::Neutral>(&v->node);
  if (!n) return false;
  auto* g = std::get_if<HeadGlobal>(&n->head);
  return g && g->decl->kind == DeclKind::Def;
}

bool same_head(const Head& a, const Head& b) {
  if (a.index() != b.index()) return false;
  if (auto* x = std::get_if<HeadVar>(&a)) return x->level == std::get<HeadVar>(b).level;
  return std::get<HeadGlobal>(a).decl == std::get<HeadGlobal>(b).decl;
}

bool conv_elim(std::uint32_t depth, const Elim& a, const Elim& b) {
  if (a.index() != b.index()) return false;
  if (auto* x = std::get_if<elim::App>(&a)) return conv(depth, x->arg, std::get<elim::App>(b).arg);
  if (auto* x = std::get_if<elim::J>(&a)) {
    auto& y = std::get<elim::J>(b);
    return conv(depth, x->motive, y.motive) && conv(depth, x->base_case, y.base_case) &&
           conv(depth, x->endpoint, y.endpoint) && conv(depth, x->base, y.base) &&
           conv(depth, x->type, y.type);
  }
  if (auto* x = std::get_if<elim::Empty>(&a)) {
    return conv(depth, x->motive, std::get<elim::Empty>(b).motive);
  }
  if (auto* x = std::get_if<elim::Unit>(&a)) {
    auto& y = std::get<elim::Unit>(b);
    return conv(depth, x->motive, y.motive) && conv(depth, x->star_case, y.star_case);
  }
  if (auto* x = std::get_if<elim::Bool>(&a)) {
    auto& y = std::get<elim::Bool>(b);
    return conv(depth, x->motive, y.motive) && conv(depth, x->zero_case, y.zero_case) &&
           conv(depth, x->one_case, y.one_case);
  }
  return true;  // fst, snd
}

bool conv_neutral(std::uint32_t depth, const val::Neutral& a, const val::Neutral& b) {
  if (!same_head(a.head, b.head) || a.spine.size() != b.spine.size()) return false;
  for (std::size_t i = 0; i < a.spine.size(); ++i) {
    if (!conv_elim(depth, a.spine[i], b.spine[i])) return false;
  }
  return true;
}

bool conv_under(std::uint32_t depth, const Closure& a, const Closure& b) {
  Val x = var_value(depth);
  return conv(depth + 1, apply_closure(a, x), apply_closure(b, x));
}

}  // namespace

bool conv(std::uint32_t depth, const Val& a0, const Val& b0) {
  if (a0 == b0) return true;

  // Same definition applied to convertible spines: no need to unfold.
  if (is_glued(a0) && is_glued(b0)) {
    auto& x = std::get<val::Neutral>(a0->node);
    auto& y = std::get<val::Neutral>(b0->node);
    if (same_head(x.head, y.head) && conv_neutral(depth, x, y)) return true;
  }
  const Val a = force(a0);
  const Val b = force(b0);

  // Eta rules first. The other side must be able to take the elimination;
  // anything else is a canonical form of a different type.
  auto takes = [](const Val& v, auto tag) {
    using T = decltype(tag);
    return std::holds_alternative<T>(v->node) || std::holds_alternative<val::Neutral>(v->node);
  };
  if ((std::holds_alternative<val::Lam>(a->node) && !takes(b, val::Lam{})) ||
      (std::holds_alternative<val::Lam>(b->node) && !takes(a, val::Lam{})) ||
      (std::holds_alternative<val::Pair>(a->node) && !takes(b, val::Pair{})) ||
      (std::holds_alternative<val::Pair>(b->node) && !takes(a, val::Pair{}))) {
    return false;
  }
  if (auto* la = std::get_if<val::Lam>(&a->node)) {
    Val x = var_value(depth);
    if (auto* lb = std::get_if<val::Lam>(&b->node)) {
      return conv(depth + 1, apply_closure(la->body, x), apply_closure(lb->body, x));
    }
    return conv(depth + 1, apply_closure(la->body, x), do_app(b, x));
  }
  if (auto* lb = std::get_if<val::Lam>(&b->node)) {
    Val x = var_value(depth);
    return conv(depth + 1, do_app(a, x), apply_closure(lb->body, x));
  }
  if (std::holds_alternative<val::Pair>(a->node) || std::holds_alternative<val::Pair>(b->node)) {
    return conv(depth, do_fst(a), do_fst(b)) && conv(depth, do_snd(a), do_snd(b));
  }

  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, val::Universe>) {
          return x.level == y.level;
        } else if constexpr (std::is_same_v<T, val::Pi> || std::is_same_v<T, val::Sigma>) {
          if constexpr (std::is_same_v<T, val::Pi>) {
            return conv(depth, x.domain, y.domain) && conv_under(depth, x.codomain, y.codomain);
          } else {
            return conv(depth, x.first, y.first) && conv_under(depth, x.second, y.second);
          }
        } else if constexpr (std::is_same_v<T, val::IdTy>) {
          return conv(depth, x.type, y.type) && conv(depth, x.lhs, y.lhs) &&
                 conv(depth, x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, val::Refl>) {
          return conv(depth, x.point, y.point) && conv(depth, x.type, y.type);
        } else if constexpr (std::is_same_v<T, val::Neutral>) {
          return conv_neutral(depth, x, y);
        } else {
          return true;  // nullary formers; Lam and Pair handled above
        }
      },
      a->node);
}

bool subtype(std::uint32_t depth, const Val& sub0, const Val& super0) {
  const Val sub = force(sub0);
  const Val super = force(super0);
  if (auto* u = std::get_if<val::Universe>(&sub->node)) {
    if (auto* v = std::get_if<val::Universe>(&super->node)) return u->level <= v->level;
    return false;
  }
  if (auto* p = std::get_if<val::Pi>(&sub->node)) {
    if (auto* q = std::get_if<val::Pi>(&super->node)) {
      Val x = var_value(depth);
      return conv(depth, p->domain, q->domain) &&
             subtype(depth + 1, apply_closure(p->codomain, x), apply_closure(q->codomain, x));
    }
    return false;
  }
  if (auto* s = std::get_if<val::Sigma>(&sub->node)) {
    if (auto* t = std::get_if<val::Sigma>(&super->node)) {
      Val x = var_value(depth);
      return subtype(depth, s->first, t->first) &&
             subtype(depth + 1, apply_closure(s->second, x), apply_closure(t->second, x));
    }
    return false;
  }
  return conv(depth, sub, super);
}

}  // namespace tcat
