#include <algorithm>
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

bool mentions_index(const Term& t, std::uint32_t index);

bool mentions_under(const Term& t, std::uint32_t index) { return mentions_index(t, index + 1); }

bool mentions_index(const Term& t, std::uint32_t index) {
  auto m = [&](const Term& x) { return mentions_index(x, index); };
  return std::visit(
      overloaded{
          [&](const core::Var& v) { return v.index == index; },
          [&](const core::Pi& p) { return m(p.domain) || mentions_under(p.codomain, index); },
          [&](const core::Lam& l) { return m(l.domain) || mentions_under(l.body, index); },
          [&](const core::Sigma& s) { return m(s.first) || mentions_under(s.second, index); },
          [&](const core::App& a) { return m(a.fn) || m(a.arg); },
          [&](const core::Pair& p) { return m(p.first) || m(p.second); },
          [&](const core::Fst& f) { return m(f.pair); },
          [&](const core::Snd& s) { return m(s.pair); },
          [&](const core::IdTy& i) { return m(i.type) || m(i.lhs) || m(i.rhs); },
          [&](const core::Refl& r) { return m(r.type) || m(r.point); },
          [&](const core::J& j) {
            return m(j.type) || m(j.base) || m(j.motive) || m(j.base_case) || m(j.endpoint) ||
                   m(j.proof);
          },
          [&](const core::ElimEmpty& e) { return m(e.motive) || m(e.scrutinee); },
          [&](const core::ElimUnit& e) { return m(e.motive) || m(e.star_case) || m(e.scrutinee); },
          [&](const core::ElimBool& e) {
            return m(e.motive) || m(e.zero_case) || m(e.one_case) || m(e.scrutinee);
          },
          [](const auto&) { return false; },
      },
      t->node);
}

class ToRaw {
 public:
  ToRaw(std::vector<std::string> names, const GlobalEnv* globals)
      : names_(std::move(names)), globals_(globals) {}

  RawPtr run(const Term& t) {
    return std::visit(
        overloaded{
            [&](const core::Var& v) -> RawPtr {
              if (v.index >= names_.size()) {
                return make_raw(raw::Var{"#" + std::to_string(v.index)});
              }
              return make_raw(raw::Var{names_[names_.size() - 1 - v.index]});
            },
            [&](const core::Global& g) { return make_raw(raw::Var{g.decl->name}); },
            [&](const core::Universe& u) { return make_raw(raw::Universe{u.level}); },
            [&](const core::Pi& p) {
              RawPtr dom = run(p.domain);
              auto [name, cod] = under(p.name, p.codomain);
              return make_raw(raw::Pi{name, dom, cod});
            },
            [&](const core::Lam& l) {
              auto [name, body] = under(l.name, l.body);
              return make_raw(raw::Lam{name, body});
            },
            [&](const core::Sigma& s) {
              RawPtr first = run(s.first);
              auto [name, second] = under(s.name, s.second);
              return make_raw(raw::Sigma{name, first, second});
            },
            [&](const core::App& a) { return make_raw(raw::App{run(a.fn), run(a.arg)}); },
            [&](const core::Pair& p) { return make_raw(raw::Pair{run(p.first), run(p.second)}); },
            [&](const core::Fst& f) { return make_raw(raw::Fst{run(f.pair)}); },
            [&](const core::Snd& s) { return make_raw(raw::Snd{run(s.pair)}); },
            [&](const core::IdTy& i) {
              return make_raw(raw::IdTy{run(i.type), run(i.lhs), run(i.rhs)});
            },
            [&](const core::Refl& r) { return make_raw(raw::Refl{run(r.type), run(r.point)}); },
            [&](const core::J& j) {
              return make_raw(raw::J{run(j.type), run(j.base), run(j.motive), run(j.base_case),
                                     run(j.endpoint), run(j.proof)});
            },
            [&](const core::Empty&) { return make_raw(raw::Empty{}); },
            [&](const core::ElimEmpty& e) {
              return make_raw(raw::ElimEmpty{run(e.motive), run(e.scrutinee)});
            },
            [&](const core::Unit&) { return make_raw(raw::Unit{}); },
            [&](const core::Star&) { return make_raw(raw::Star{}); },
            [&](const core::ElimUnit& e) {
              return make_raw(raw::ElimUnit{run(e.motive), run(e.star_case), run(e.scrutinee)});
            },
            [&](const core::Bool&) { return make_raw(raw::Bool{}); },
            [&](const core::BZero&) { return make_raw(raw::BZero{}); },
            [&](const core::BOne&) { return make_raw(raw::BOne{}); },
            [&](const core::ElimBool& e) {
              return make_raw(raw::ElimBool{run(e.motive), run(e.zero_case), run(e.one_case),
                                            run(e.scrutinee)});
            },
        },
        t->node);
  }

 private:
  bool taken(const std::string& n) const {
    return std::find(names_.begin(), names_.end(), n) != names_.end() ||
           (globals_ && globals_->find(n));
  }

  std::pair<std::string, RawPtr> under(std::string name, const Term& body) {
    const bool used = mentions_index(body, 0);
    if (name == "_" && used) name = "x";
    if (name != "_") {
      std::string base = name;
      for (int i = 1; taken(name); ++i) name = base + std::to_string(i);
    }
    names_.push_back(name);
    RawPtr out = run(body);
    names_.pop_back();
    return {name, out};
  }

  std::vector<std::string> names_;
  const GlobalEnv* globals_;
};

void collect_globals(const Term& t, std::set<const Declaration*>& out) {
  auto c = [&](const Term& x) { collect_globals(x, out); };
  std::visit(overloaded{
                 [&](const core::Global& g) { out.insert(g.decl.get()); },
                 [&](const core::Pi& p) { c(p.domain), c(p.codomain); },
                 [&](const core::Lam& l) { c(l.domain), c(l.body); },
                 [&](const core::Sigma& s) { c(s.first), c(s.second); },
                 [&](const core::App& a) { c(a.fn), c(a.arg); },
                 [&](const core::Pair& p) { c(p.first), c(p.second); },
                 [&](const core::Fst& f) { c(f.pair); },
                 [&](const core::Snd& s) { c(s.pair); },
                 [&](const core::IdTy& i) { c(i.type), c(i.lhs), c(i.rhs); },
                 [&](const core::Refl& r) { c(r.type), c(r.point); },
                 [&](const core::J& j) {
                   c(j.type), c(j.base), c(j.motive), c(j.base_case), c(j.endpoint), c(j.proof);
                 },
                 [&](const core::ElimEmpty& e) { c(e.motive), c(e.scrutinee); },
                 [&](const core::ElimUnit& e) { c(e.motive), c(e.star_case), c(e.scrutinee); },
                 [&](const core::ElimBool& e) {
                   c(e.motive), c(e.zero_case), c(e.one_case), c(e.scrutinee);
                 },
                 [](const auto&) {},
             },
             t->node);
}

}  // namespace

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::UnboundName: return "UnboundName";
    case ErrorCategory::NotAFunction: return "NotAFunction";
    case ErrorCategory::NotAPair: return "NotAPair";
    case ErrorCategory::TypeMismatch: return "TypeMismatch";
    case ErrorCategory::UniverseError: return "UniverseError";
    case ErrorCategory::ExpectedType: return "ExpectedType";
    case ErrorCategory::IdEndpointMismatch: return "IdEndpointMismatch";
    case ErrorCategory::DuplicateName: return "DuplicateName";
  }
  return "?";
}

TypeError::TypeError(ErrorCategory category, SrcSpan span, std::string message,
                     std::string expected, std::string actual)
    : std::runtime_error(span.to_string() + ": " + std::string(category_name(category)) + ": " +
                         message),
      category_(category),
      span_(std::move(span)),
      message_(std::move(message)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

const Declaration* GlobalEnv::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : order_[it->second].get();
}

DeclPtr GlobalEnv::find_ptr(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : order_[it->second];
}

void GlobalEnv::add(DeclPtr decl) {
  auto [it, fresh] = index_.emplace(decl->name, order_.size());
  if (!fresh) throw std::logic_error("GlobalEnv::add: duplicate " + decl->name);
  order_.push_back(std::move(decl));
}

Context Context::bind(std::string name, Val type) const {
  Context out = *this;
  out.env_ = env_.extend(var_value(depth()));
  out.names_.push_back(std::move(name));
  out.types_.push_back(std::move(type));
  return out;
}

std::set<std::string> referenced_axioms(const Term& type, const Term& body) {
  std::set<const Declaration*> refs;
  collect_globals(type, refs);
  if (body) collect_globals(body, refs);
  std::set<std::string> out;
  for (const Declaration* d : refs) out.insert(d->axiom_closure.begin(), d->axiom_closure.end());
  return out;
}

std::set<std::string> axiom_closure(const GlobalEnv& globals, const std::string& name) {
  const Declaration* d = globals.find(name);
  if (!d) throw TypeError(ErrorCategory::UnboundName, {}, "unknown declaration '" + name + "'");
  return d->axiom_closure;
}

Term normalize_term(const Term& closed_term) { return quote(0, eval(Env{}, closed_term)); }

Term normalize(const GlobalEnv& globals, const std::string& name) {
  DeclPtr d = globals.find_ptr(name);
  if (!d) throw TypeError(ErrorCategory::UnboundName, {}, "unknown declaration '" + name + "'");
  return normalize_term(make_term(core::Global{d}));
}

Term normalize(const GlobalEnv& globals, const RawPtr& closed_term) {
  return normalize_term(infer(globals, Context{}, closed_term).term);
}

RawPtr to_raw(const Term& term, std::vector<std::string> names, const GlobalEnv* globals) {
  return ToRaw(std::move(names), globals).run(term);
}

std::string print_core(const Term& term, const std::vector<std::string>& names,
                       const GlobalEnv* globals) {
  return print_term(to_raw(term, names, globals));
}

std::string print_value(const Val& v, const std::vector<std::string>& names,
                        const GlobalEnv* globals) {
  return print_core(quote(static_cast<std::uint32_t>(names.size()), v, false), names, globals);
}

}  // namespace tcat
