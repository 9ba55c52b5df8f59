#include <algorithm>
#include <functional>
#include <type_traits>

#include "tcat/kernel.hpp"

namespace tcat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Domain of the i-th motive binder, given the values of the earlier binders.
using MotiveDomain = std::function<Val(const std::vector<Val>&)>;

class Elaborator {
 public:
  explicit Elaborator(const GlobalEnv& globals) : g_(globals) {}

  Inferred infer(const Context& ctx, const RawPtr& t) {
    const SrcSpan& span = t->span;
    return std::visit(
        overloaded{
            [&](const raw::Var& v) { return variable(ctx, v.name, span); },
            [&](const raw::Universe& u) {
              return Inferred{make_term(core::Universe{u.level}),
                              make_value(val::Universe{u.level + 1})};
            },
            [&](const raw::Pi& p) {
              auto [dom, i] = check_type(ctx, p.domain);
              Val dv = eval(ctx.env(), dom);
              auto [cod, j] = check_type(ctx.bind(p.name, dv), p.codomain);
              return Inferred{make_term(core::Pi{p.name, dom, cod}),
                              make_value(val::Universe{std::max(i, j)})};
            },
            [&](const raw::Sigma& s) {
              auto [fst, i] = check_type(ctx, s.first);
              Val fv = eval(ctx.env(), fst);
              auto [snd, j] = check_type(ctx.bind(s.name, fv), s.second);
              return Inferred{make_term(core::Sigma{s.name, fst, snd}),
                              make_value(val::Universe{std::max(i, j)})};
            },
            [&](const raw::Lam&) -> Inferred {
              throw TypeError(ErrorCategory::ExpectedType, span,
                              "cannot infer the type of a lambda; annotate it as (fun x => t : T)");
            },
            [&](const raw::Pair&) -> Inferred {
              throw TypeError(ErrorCategory::ExpectedType, span,
                              "cannot infer the type of a pair; annotate it as (pair a b : T)");
            },
            [&](const raw::App& a) {
              Inferred fn = infer(ctx, a.fn);
              Val fty = force(fn.type);
              auto* pi = std::get_if<val::Pi>(&fty->node);
              if (!pi) {
                throw TypeError(ErrorCategory::NotAFunction, a.fn->span,
                                "applied term is not a function", "a Pi type", show(ctx, fn.type));
              }
              Term arg = check(ctx, a.arg, pi->domain);
              Val type = apply_closure(pi->codomain, eval(ctx.env(), arg));
              return Inferred{make_term(core::App{fn.term, arg}), type};
            },
            [&](const raw::Fst& f) {
              Inferred p = infer(ctx, f.pair);
              Val ty = sigma_of(ctx, p, f.pair->span);
              return Inferred{make_term(core::Fst{p.term}), std::get<val::Sigma>(ty->node).first};
            },
            [&](const raw::Snd& s) {
              Inferred p = infer(ctx, s.pair);
              Val ty = sigma_of(ctx, p, s.pair->span);
              Val first = do_fst(eval(ctx.env(), p.term));
              return Inferred{make_term(core::Snd{p.term}),
                              apply_closure(std::get<val::Sigma>(ty->node).second, first)};
            },
            [&](const raw::IdTy& i) {
              auto [type, level] = check_type(ctx, i.type);
              Val tv = eval(ctx.env(), type);
              Term lhs = endpoint(ctx, i.lhs, tv);
              Term rhs = endpoint(ctx, i.rhs, tv);
              return Inferred{make_term(core::IdTy{type, lhs, rhs}),
                              make_value(val::Universe{level})};
            },
            [&](const raw::Refl& r) {
              auto [type, level] = check_type(ctx, r.type);
              Val tv = eval(ctx.env(), type);
              Term point = check(ctx, r.point, tv);
              Val pv = eval(ctx.env(), point);
              return Inferred{make_term(core::Refl{type, point}),
                              make_value(val::IdTy{tv, pv, pv})};
            },
            [&](const raw::J& j) { return infer_j(ctx, j); },
            [&](const raw::Empty&) { return small_type(core::Empty{}); },
            [&](const raw::Unit&) { return small_type(core::Unit{}); },
            [&](const raw::Bool&) { return small_type(core::Bool{}); },
            [&](const raw::Star&) {
              return Inferred{make_term(core::Star{}), make_value(val::Unit{})};
            },
            [&](const raw::BZero&) {
              return Inferred{make_term(core::BZero{}), make_value(val::Bool{})};
            },
            [&](const raw::BOne&) {
              return Inferred{make_term(core::BOne{}), make_value(val::Bool{})};
            },
            [&](const raw::ElimEmpty& e) {
              Val dom = make_value(val::Empty{});
              Term motive = check_motive(ctx, e.motive, {[dom](const auto&) { return dom; }});
              Term scrut = check(ctx, e.scrutinee, dom);
              Val type = do_app(eval(ctx.env(), motive), eval(ctx.env(), scrut));
              return Inferred{make_term(core::ElimEmpty{motive, scrut}), type};
            },
            [&](const raw::ElimUnit& e) {
              Val dom = make_value(val::Unit{});
              Term motive = check_motive(ctx, e.motive, {[dom](const auto&) { return dom; }});
              Val mv = eval(ctx.env(), motive);
              Term star_case = check(ctx, e.star_case, do_app(mv, make_value(val::Star{})));
              Term scrut = check(ctx, e.scrutinee, dom);
              return Inferred{make_term(core::ElimUnit{motive, star_case, scrut}),
                              do_app(mv, eval(ctx.env(), scrut))};
            },
            [&](const raw::ElimBool& e) {
              Val dom = make_value(val::Bool{});
              Term motive = check_motive(ctx, e.motive, {[dom](const auto&) { return dom; }});
              Val mv = eval(ctx.env(), motive);
              Term zero = check(ctx, e.zero_case, do_app(mv, make_value(val::BZero{})));
              Term one = check(ctx, e.one_case, do_app(mv, make_value(val::BOne{})));
              Term scrut = check(ctx, e.scrutinee, dom);
              return Inferred{make_term(core::ElimBool{motive, zero, one, scrut}),
                              do_app(mv, eval(ctx.env(), scrut))};
            },
            [&](const raw::Ann& a) {
              auto [type, level] = check_type(ctx, a.type);
              Val tv = eval(ctx.env(), type);
              return Inferred{check(ctx, a.term, tv), tv};
            },
        },
        t->node);
  }

  Term check(const Context& ctx, const RawPtr& t, const Val& expected) {
    if (auto* lam = std::get_if<raw::Lam>(&t->node)) {
      Val exp = force(expected);
      auto* pi = std::get_if<val::Pi>(&exp->node);
      if (!pi) {
        throw TypeError(ErrorCategory::NotAFunction, t->span,
                        "lambda checked against a type that is not a function type",
                        show(ctx, expected), "a function type");
      }
      Context inner = ctx.bind(lam->name, pi->domain);
      Term body = check(inner, lam->body, apply_closure(pi->codomain, var_value(ctx.depth())));
      return make_term(core::Lam{lam->name, quote(ctx.depth(), pi->domain, false), body});
    }
    if (auto* pair = std::get_if<raw::Pair>(&t->node)) {
      Val exp = force(expected);
      auto* sig = std::get_if<val::Sigma>(&exp->node);
      if (!sig) {
        throw TypeError(ErrorCategory::NotAPair, t->span,
                        "pair checked against a type that is not a Sigma type",
                        show(ctx, expected), "a Sigma type");
      }
      Term first = check(ctx, pair->first, sig->first);
      Term second =
          check(ctx, pair->second, apply_closure(sig->second, eval(ctx.env(), first)));
      return make_term(core::Pair{first, second});
    }

    Inferred got = infer(ctx, t);
    if (!subtype(ctx.depth(), got.type, expected)) mismatch(ctx, t->span, expected, got.type);
    return got.term;
  }

  // Returns the elaborated type and its universe level.
  std::pair<Term, std::uint32_t> check_type(const Context& ctx, const RawPtr& t) {
    Inferred got = infer(ctx, t);
    Val ty = force(got.type);
    if (auto* u = std::get_if<val::Universe>(&ty->node)) return {got.term, u->level};
    throw TypeError(ErrorCategory::ExpectedType, t->span, "expected a type", "a universe",
                    show(ctx, got.type));
  }

 private:
  std::string show(const Context& ctx, const Val& v) const {
    return print_value(v, ctx.names(), &g_);
  }

  [[noreturn]] void mismatch(const Context& ctx, const SrcSpan& span, const Val& expected,
                             const Val& actual) {
    Val e = force(expected);
    Val a = force(actual);
    ErrorCategory cat = ErrorCategory::TypeMismatch;
    std::string what = "type mismatch";
    if (std::holds_alternative<val::Universe>(e->node) &&
        std::holds_alternative<val::Universe>(a->node)) {
      cat = ErrorCategory::UniverseError;
      what = "universe level too large";
    } else if (auto* ei = std::get_if<val::IdTy>(&e->node)) {
      auto* ai = std::get_if<val::IdTy>(&a->node);
      if (ai && conv(ctx.depth(), ei->type, ai->type)) {
        cat = ErrorCategory::IdEndpointMismatch;
        what = "identity proof has the wrong endpoints";
      }
    }
    std::string exp_s = show(ctx, expected);
    std::string act_s = show(ctx, actual);
    throw TypeError(cat, span, what + "\n  expected: " + exp_s + "\n  actual:   " + act_s, exp_s,
                    act_s);
  }

  Inferred variable(const Context& ctx, const std::string& name, const SrcSpan& span) {
    const auto& names = ctx.names();
    if (name != "_") {
      for (std::size_t i = names.size(); i-- > 0;) {
        if (names[i] == name) {
          auto index = static_cast<std::uint32_t>(names.size() - 1 - i);
          return Inferred{make_term(core::Var{index}), ctx.types()[i]};
        }
      }
      if (DeclPtr d = g_.find_ptr(name)) {
        return Inferred{make_term(core::Global{d}), d->type_value};
      }
    }
    throw TypeError(ErrorCategory::UnboundName, span, "unbound name '" + name + "'");
  }

  template <class Node>
  Inferred small_type(Node node) {
    return Inferred{make_term(std::move(node)), make_value(val::Universe{0})};
  }

  // The forced type, guaranteed to be a Sigma.
  Val sigma_of(const Context& ctx, const Inferred& p, const SrcSpan& span) {
    Val ty = force(p.type);
    if (!std::holds_alternative<val::Sigma>(ty->node)) {
      throw TypeError(ErrorCategory::NotAPair, span, "projection from a term that is not a pair",
                      "a Sigma type", show(ctx, p.type));
    }
    return ty;
  }

  Term endpoint(const Context& ctx, const RawPtr& t, const Val& carrier) {
    try {
      return check(ctx, t, carrier);
    } catch (const TypeError& e) {
      if (e.category() != ErrorCategory::TypeMismatch &&
          e.category() != ErrorCategory::UniverseError) {
        throw;
      }
      throw TypeError(ErrorCategory::IdEndpointMismatch, e.span(),
                      "identity endpoint is not an element of the carrier type\n" + e.message(),
                      e.expected(), e.actual());
    }
  }

  // A motive is a family of types over the given telescope. A lambda is
  // checked binder by binder; any other term must infer to a Pi telescope
  // ending in a universe.
  Term check_motive(const Context& ctx, const RawPtr& t, const std::vector<MotiveDomain>& doms) {
    return motive_from(ctx, t, doms, 0, {});
  }

  Term motive_from(const Context& ctx, const RawPtr& t, const std::vector<MotiveDomain>& doms,
                   std::size_t i, std::vector<Val> bound) {
    if (i == doms.size()) return check_type(ctx, t).first;
    Val dom = doms[i](bound);
    if (auto* lam = std::get_if<raw::Lam>(&t->node)) {
      Context inner = ctx.bind(lam->name, dom);
      bound.push_back(var_value(ctx.depth()));
      Term body = motive_from(inner, lam->body, doms, i + 1, std::move(bound));
      return make_term(core::Lam{lam->name, quote(ctx.depth(), dom, false), body});
    }

    Inferred got = infer(ctx, t);
    Val ty = got.type;
    std::uint32_t depth = ctx.depth();
    for (std::size_t k = i; k < doms.size(); ++k) {
      Val want = k == i ? dom : doms[k](bound);
      Val f = force(ty);
      auto* pi = std::get_if<val::Pi>(&f->node);
      if (!pi || !conv(depth, pi->domain, want)) motive_error(ctx, t, got.type, doms.size());
      Val x = var_value(depth);
      bound.push_back(x);
      ty = apply_closure(pi->codomain, x);
      ++depth;
    }
    if (!std::holds_alternative<val::Universe>(force(ty)->node)) {
      motive_error(ctx, t, got.type, doms.size());
    }
    return got.term;
  }

  [[noreturn]] void motive_error(const Context& ctx, const RawPtr& t, const Val& actual,
                                 std::size_t arity) {
    std::string act = show(ctx, actual);
    throw TypeError(ErrorCategory::TypeMismatch, t->span,
                    "eliminator motive must be a type family of " + std::to_string(arity) +
                        " argument(s)\n  actual:   " + act,
                    "a family of " + std::to_string(arity) + " argument(s) into a universe", act);
  }

  Inferred infer_j(const Context& ctx, const raw::J& j) {
    auto [type, level] = check_type(ctx, j.type);
    Val tv = eval(ctx.env(), type);
    Term base = check(ctx, j.base, tv);
    Val bv = eval(ctx.env(), base);
    std::vector<MotiveDomain> doms{
        [tv](const auto&) { return tv; },
        [tv, bv](const std::vector<Val>& xs) { return make_value(val::IdTy{tv, bv, xs.at(0)}); },
    };
    Term motive = check_motive(ctx, j.motive, doms);
    Val mv = eval(ctx.env(), motive);
    Val refl = make_value(val::Refl{tv, bv});
    Term base_case = check(ctx, j.base_case, do_app(do_app(mv, bv), refl));
    Term end = check(ctx, j.endpoint, tv);
    Val ev = eval(ctx.env(), end);
    Term proof = check(ctx, j.proof, make_value(val::IdTy{tv, bv, ev}));
    Val type_out = do_app(do_app(mv, ev), eval(ctx.env(), proof));
    return Inferred{make_term(core::J{type, base, motive, base_case, end, proof}), type_out};
  }

  const GlobalEnv& g_;
};

}  // namespace

Inferred infer(const GlobalEnv& globals, const Context& ctx, const RawPtr& term) {
  return Elaborator(globals).infer(ctx, term);
}

Term check(const GlobalEnv& globals, const Context& ctx, const RawPtr& term, const Val& expected) {
  return Elaborator(globals).check(ctx, term, expected);
}

GlobalEnv check_declaration(GlobalEnv globals, const RawDecl& decl) {
  if (globals.find(decl.name)) {
    throw TypeError(ErrorCategory::DuplicateName, decl.span,
                    "'" + decl.name + "' is already declared");
  }
  Elaborator el(globals);
  Context empty;
  auto d = std::make_shared<Declaration>();
  d->name = decl.name;
  d->kind = decl.kind;
  d->span = decl.span;

  if (decl.kind == DeclKind::Axiom) {
    d->type = el.check_type(empty, decl.type_expr).first;
    d->type_value = eval(Env{}, d->type);
    d->axiom_closure = {decl.name};
  } else {
    if (decl.type_expr) {
      d->type = el.check_type(empty, decl.type_expr).first;
      d->type_value = eval(Env{}, d->type);
      d->body = el.check(empty, decl.body, d->type_value);
    } else {
      Inferred got = el.infer(empty, decl.body);
      d->body = got.term;
      d->type_value = got.type;
      d->type = quote(0, got.type, false);
    }
    d->body_value = eval(Env{}, d->body);
    d->axiom_closure = referenced_axioms(d->type, d->body);
  }
  globals.add(std::move(d));
  return globals;
}

}  // namespace tcat
