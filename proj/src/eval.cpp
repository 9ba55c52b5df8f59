#include <stdexcept>
#include <type_traits>

#include "tcat/value.hpp"

namespace tcat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Val with_elim(const val::Neutral& n, Elim e) {
  Spine spine = n.spine;
  spine.push_back(std::move(e));
  return make_value(val::Neutral{n.head, std::move(spine)});
}

[[noreturn]] void stuck(const char* what) {
  throw std::logic_error(std::string("ill-typed elimination reached the evaluator: ") + what);
}

Val apply_elim(const Val& v, const Elim& e) {
  return std::visit(
      overloaded{
          [&](const elim::App& a) { return do_app(v, a.arg); },
          [&](const elim::Fst&) { return do_fst(v); },
          [&](const elim::Snd&) { return do_snd(v); },
          [&](const elim::J& j) {
            return do_j(j.type, j.base, j.motive, j.base_case, j.endpoint, v);
          },
          [&](const elim::Empty& z) { return do_elim_empty(z.motive, v); },
          [&](const elim::Unit& u) { return do_elim_unit(u.motive, u.star_case, v); },
          [&](const elim::Bool& b) {
            return do_elim_bool(b.motive, b.zero_case, b.one_case, v);
          },
      },
      e);
}

}  // namespace

Env Env::extend(Val v) const {
  Env out;
  out.head_ = std::make_shared<const Node>(Node{std::move(v), head_});
  out.size_ = size_ + 1;
  return out;
}

const Val& Env::lookup(std::uint32_t index) const {
  const Node* n = head_.get();
  for (std::uint32_t i = 0; i < index && n; ++i) n = n->next.get();
  if (!n) throw std::logic_error("de Bruijn index out of range");
  return n->value;
}

Val var_value(std::uint32_t level) { return make_value(val::Neutral{HeadVar{level}, {}}); }

Val apply_closure(const Closure& closure, Val arg) {
  return eval(closure.env.extend(std::move(arg)), closure.body);
}

Val do_app(const Val& fn, Val arg) {
  if (auto* lam = std::get_if<val::Lam>(&fn->node)) return apply_closure(lam->body, std::move(arg));
  if (auto* n = std::get_if<val::Neutral>(&fn->node)) return with_elim(*n, elim::App{std::move(arg)});
  stuck("application");
}

Val do_fst(const Val& pair) {
  if (auto* p = std::get_if<val::Pair>(&pair->node)) return p->first;
  if (auto* n = std::get_if<val::Neutral>(&pair->node)) return with_elim(*n, elim::Fst{});
  stuck("fst");
}

Val do_snd(const Val& pair) {
  if (auto* p = std::get_if<val::Pair>(&pair->node)) return p->second;
  if (auto* n = std::get_if<val::Neutral>(&pair->node)) return with_elim(*n, elim::Snd{});
  stuck("snd");
}

Val do_j(Val type, Val base, Val motive, Val base_case, Val endpoint, const Val& proof) {
  if (std::holds_alternative<val::Refl>(proof->node)) return base_case;
  if (auto* n = std::get_if<val::Neutral>(&proof->node)) {
    return with_elim(*n, elim::J{std::move(type), std::move(base), std::move(motive),
                                 std::move(base_case), std::move(endpoint)});
  }
  stuck("J");
}

Val do_elim_empty(Val motive, const Val& scrutinee) {
  if (auto* n = std::get_if<val::Neutral>(&scrutinee->node)) {
    return with_elim(*n, elim::Empty{std::move(motive)});
  }
  stuck("elim0");
}

Val do_elim_unit(Val motive, Val star_case, const Val& scrutinee) {
  if (std::holds_alternative<val::Star>(scrutinee->node)) return star_case;
  if (auto* n = std::get_if<val::Neutral>(&scrutinee->node)) {
    return with_elim(*n, elim::Unit{std::move(motive), std::move(star_case)});
  }
  stuck("elim1");
}

Val do_elim_bool(Val motive, Val zero_case, Val one_case, const Val& scrutinee) {
  if (std::holds_alternative<val::BZero>(scrutinee->node)) return zero_case;
  if (std::holds_alternative<val::BOne>(scrutinee->node)) return one_case;
  if (auto* n = std::get_if<val::Neutral>(&scrutinee->node)) {
    return with_elim(*n, elim::Bool{std::move(motive), std::move(zero_case), std::move(one_case)});
  }
  stuck("elim2");
}

Val force(Val v) {
  while (auto* n = std::get_if<val::Neutral>(&v->node)) {
    auto* g = std::get_if<HeadGlobal>(&n->head);
    if (!g || g->decl->kind != DeclKind::Def) break;
    Val out = g->decl->body_value;
    for (const Elim& e : n->spine) out = apply_elim(out, e);
    v = std::move(out);
  }
  return v;
}

Val eval(const Env& env, const Term& term) {
  return std::visit(
      overloaded{
          [&](const core::Var& x) { return env.lookup(x.index); },
          [&](const core::Global& g) { return make_value(val::Neutral{HeadGlobal{g.decl}, {}}); },
          [&](const core::Universe& u) { return make_value(val::Universe{u.level}); },
          [&](const core::Pi& p) {
            return make_value(val::Pi{p.name, eval(env, p.domain), Closure{env, p.codomain}});
          },
          [&](const core::Lam& l) {
            return make_value(val::Lam{l.name, eval(env, l.domain), Closure{env, l.body}});
          },
          [&](const core::App& a) { return do_app(eval(env, a.fn), eval(env, a.arg)); },
          [&](const core::Sigma& s) {
            return make_value(val::Sigma{s.name, eval(env, s.first), Closure{env, s.second}});
          },
          [&](const core::Pair& p) {
            return make_value(val::Pair{eval(env, p.first), eval(env, p.second)});
          },
          [&](const core::Fst& f) { return do_fst(eval(env, f.pair)); },
          [&](const core::Snd& s) { return do_snd(eval(env, s.pair)); },
          [&](const core::IdTy& i) {
            return make_value(val::IdTy{eval(env, i.type), eval(env, i.lhs), eval(env, i.rhs)});
          },
          [&](const core::Refl& r) {
            return make_value(val::Refl{eval(env, r.type), eval(env, r.point)});
          },
          [&](const core::J& j) {
            return do_j(eval(env, j.type), eval(env, j.base), eval(env, j.motive),
                        eval(env, j.base_case), eval(env, j.endpoint), eval(env, j.proof));
          },
          [&](const core::Empty&) { return make_value(val::Empty{}); },
          [&](const core::ElimEmpty& e) {
            return do_elim_empty(eval(env, e.motive), eval(env, e.scrutinee));
          },
          [&](const core::Unit&) { return make_value(val::Unit{}); },
          [&](const core::Star&) { return make_value(val::Star{}); },
          [&](const core::ElimUnit& e) {
            return do_elim_unit(eval(env, e.motive), eval(env, e.star_case),
                                eval(env, e.scrutinee));
          },
          [&](const core::Bool&) { return make_value(val::Bool{}); },
          [&](const core::BZero&) { return make_value(val::BZero{}); },
          [&](const core::BOne&) { return make_value(val::BOne{}); },
          [&](const core::ElimBool& e) {
            return do_elim_bool(eval(env, e.motive), eval(env, e.zero_case),
                                eval(env, e.one_case), eval(env, e.scrutinee));
          },
      },
      term->node);
}

// ---------------------------------------------------------------------------
// Read-back

namespace {

class Quoter {
 public:
  explicit Quoter(bool unfold) : unfold_(unfold) {}

  Term run(std::uint32_t depth, Val v) {
    if (unfold_) v = force(std::move(v));
    return std::visit(
        overloaded{
            [&](const val::Universe& u) { return make_term(core::Universe{u.level}); },
            [&](const val::Pi& p) {
              return make_term(core::Pi{p.name, run(depth, p.domain), under(depth, p.codomain)});
            },
            [&](const val::Lam& l) {
              return make_term(core::Lam{l.name, run(depth, l.domain), under(depth, l.body)});
            },
            [&](const val::Sigma& s) {
              return make_term(
                  core::Sigma{s.name, run(depth, s.first), under(depth, s.second)});
            },
            [&](const val::Pair& p) {
              return make_term(core::Pair{run(depth, p.first), run(depth, p.second)});
            },
            [&](const val::IdTy& i) {
              return make_term(
                  core::IdTy{run(depth, i.type), run(depth, i.lhs), run(depth, i.rhs)});
            },
            [&](const val::Refl& r) {
              return make_term(core::Refl{run(depth, r.type), run(depth, r.point)});
            },
            [&](const val::Empty&) { return make_term(core::Empty{}); },
            [&](const val::Unit&) { return make_term(core::Unit{}); },
            [&](const val::Star&) { return make_term(core::Star{}); },
            [&](const val::Bool&) { return make_term(core::Bool{}); },
            [&](const val::BZero&) { return make_term(core::BZero{}); },
            [&](const val::BOne&) { return make_term(core::BOne{}); },
            [&](const val::Neutral& n) { return neutral(depth, n); },
        },
        v->node);
  }

 private:
  Term under(std::uint32_t depth, const Closure& c) {
    return run(depth + 1, apply_closure(c, var_value(depth)));
  }

  Term neutral(std::uint32_t depth, const val::Neutral& n) {
    Term out = std::visit(
        overloaded{
            [&](const HeadVar& h) { return make_term(core::Var{depth - 1 - h.level}); },
            [&](const HeadGlobal& g) { return make_term(core::Global{g.decl}); },
        },
        n.head);
    for (const Elim& e : n.spine) {
      out = std::visit(
          overloaded{
              [&](const elim::App& a) { return make_term(core::App{out, run(depth, a.arg)}); },
              [&](const elim::Fst&) { return make_term(core::Fst{out}); },
              [&](const elim::Snd&) { return make_term(core::Snd{out}); },
              [&](const elim::J& j) {
                return make_term(core::J{run(depth, j.type), run(depth, j.base),
                                         run(depth, j.motive), run(depth, j.base_case),
                                         run(depth, j.endpoint), out});
              },
              [&](const elim::Empty& z) {
                return make_term(core::ElimEmpty{run(depth, z.motive), out});
              },
              [&](const elim::Unit& u) {
                return make_term(
                    core::ElimUnit{run(depth, u.motive), run(depth, u.star_case), out});
              },
              [&](const elim::Bool& b) {
                return make_term(core::ElimBool{run(depth, b.motive), run(depth, b.zero_case),
                                                run(depth, b.one_case), out});
              },
          },
          e);
    }
    return out;
  }

  bool unfold_;
};

bool same_terms(const Term& a, const Term& b);

struct SameNode {
  const CoreTerm& other;

  bool operator()(const core::Var& x) const {
    return x.index == std::get<core::Var>(other.node).index;
  }
  bool operator()(const core::Global& x) const {
    return x.decl->name == std::get<core::Global>(other.node).decl->name;
  }
  bool operator()(const core::Universe& x) const {
    return x.level == std::get<core::Universe>(other.node).level;
  }
  bool operator()(const core::Pi& x) const {
    auto& y = std::get<core::Pi>(other.node);
    return same_terms(x.domain, y.domain) && same_terms(x.codomain, y.codomain);
  }
  bool operator()(const core::Lam& x) const {
    auto& y = std::get<core::Lam>(other.node);
    return same_terms(x.domain, y.domain) && same_terms(x.body, y.body);
  }
  bool operator()(const core::App& x) const {
    auto& y = std::get<core::App>(other.node);
    return same_terms(x.fn, y.fn) && same_terms(x.arg, y.arg);
  }
  bool operator()(const core::Sigma& x) const {
    auto& y = std::get<core::Sigma>(other.node);
    return same_terms(x.first, y.first) && same_terms(x.second, y.second);
  }
  bool operator()(const core::Pair& x) const {
    auto& y = std::get<core::Pair>(other.node);
    return same_terms(x.first, y.first) && same_terms(x.second, y.second);
  }
  bool operator()(const core::Fst& x) const {
    return same_terms(x.pair, std::get<core::Fst>(other.node).pair);
  }
  bool operator()(const core::Snd& x) const {
    return same_terms(x.pair, std::get<core::Snd>(other.node).pair);
  }
  bool operator()(const core::IdTy& x) const {
    auto& y = std::get<core::IdTy>(other.node);
    return same_terms(x.type, y.type) && same_terms(x.lhs, y.lhs) && same_terms(x.rhs, y.rhs);
  }
  bool operator()(const core::Refl& x) const {
    auto& y = std::get<core::Refl>(other.node);
    return same_terms(x.type, y.type) && same_terms(x.point, y.point);
  }
  bool operator()(const core::J& x) const {
    auto& y = std::get<core::J>(other.node);
    return same_terms(x.type, y.type) && same_terms(x.base, y.base) &&
           same_terms(x.motive, y.motive) && same_terms(x.base_case, y.base_case) &&
           same_terms(x.endpoint, y.endpoint) && same_terms(x.proof, y.proof);
  }
  bool operator()(const core::ElimEmpty& x) const {
    auto& y = std::get<core::ElimEmpty>(other.node);
    return same_terms(x.motive, y.motive) && same_terms(x.scrutinee, y.scrutinee);
  }
  bool operator()(const core::ElimUnit& x) const {
    auto& y = std::get<core::ElimUnit>(other.node);
    return same_terms(x.motive, y.motive) && same_terms(x.star_case, y.star_case) &&
           same_terms(x.scrutinee, y.scrutinee);
  }
  bool operator()(const core::ElimBool& x) const {
    auto& y = std::get<core::ElimBool>(other.node);
    return same_terms(x.motive, y.motive) && same_terms(x.zero_case, y.zero_case) &&
           same_terms(x.one_case, y.one_case) && same_terms(x.scrutinee, y.scrutinee);
  }
  template <class T>
  bool operator()(const T&) const {
    return true;
  }
};

bool same_terms(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(SameNode{*b}, a->node);
}

}  // namespace

Term quote(std::uint32_t depth, const Val& v, bool unfold_defs) {
  return Quoter(unfold_defs).run(depth, v);
}

bool syntactically_equal(const Term& a, const Term& b) { return same_terms(a, b); }

}  // namespace tcat
