#include "tcat/syntax.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

namespace tcat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Binding strength, loosest first.
enum Prec : int { kTerm = 0, kArrow = 1, kSigma = 2, kApp = 3, kAtom = 4 };

class Printer {
 public:
  std::string run(const RawPtr& t) {
    emit(t, kTerm);
    return out_.str();
  }

 private:
  void emit(const RawPtr& t, int prec) {
    const int own = level(*t);
    const bool wrap = own < prec;
    if (wrap) out_ << '(';
    body(*t);
    if (wrap) out_ << ')';
  }

  // `(x : T)` as the left operand of `->`/`**` would read back as a binder.
  void emit_operand(const RawPtr& t, int prec) {
    if (std::holds_alternative<raw::Ann>(t->node)) {
      out_ << '(';
      emit(t, kTerm);
      out_ << ')';
    } else {
      emit(t, prec);
    }
  }

  static int level(const RawTerm& t) {
    return std::visit(
        overloaded{
            [](const raw::Lam&) { return int{kTerm}; },
            [](const raw::Pi&) { return int{kArrow}; },
            [](const raw::Sigma&) { return int{kSigma}; },
            [](const raw::Var&) { return int{kAtom}; },
            [](const raw::Empty&) { return int{kAtom}; },
            [](const raw::Unit&) { return int{kAtom}; },
            [](const raw::Star&) { return int{kAtom}; },
            [](const raw::Bool&) { return int{kAtom}; },
            [](const raw::BZero&) { return int{kAtom}; },
            [](const raw::BOne&) { return int{kAtom}; },
            [](const raw::Ann&) { return int{kAtom}; },
            [](const auto&) { return int{kApp}; },
        },
        t.node);
  }

  void form(const char* keyword, std::initializer_list<const RawPtr*> args) {
    out_ << keyword;
    for (const RawPtr* a : args) {
      out_ << ' ';
      emit(*a, kAtom);
    }
  }

  void body(const RawTerm& t) {
    std::visit(
        overloaded{
            [&](const raw::Var& v) { out_ << v.name; },
            [&](const raw::Universe& u) { out_ << "U " << u.level; },
            [&](const raw::Pi& p) {
              if (p.name == "_") {
                emit_operand(p.domain, kSigma);
              } else {
                out_ << '(' << p.name << " : ";
                emit(p.domain, kTerm);
                out_ << ')';
              }
              out_ << " -> ";
              emit(p.codomain, kArrow);
            },
            [&](const raw::Sigma& s) {
              if (s.name == "_") {
                emit_operand(s.first, kApp);
              } else {
                out_ << '(' << s.name << " : ";
                emit(s.first, kTerm);
                out_ << ')';
              }
              out_ << " ** ";
              emit(s.second, kSigma);
            },
            [&](const raw::Lam& l) {
              out_ << "fun " << l.name;
              const RawTerm* inner = l.body.get();
              while (auto* next = std::get_if<raw::Lam>(&inner->node)) {
                out_ << ' ' << next->name;
                inner = next->body.get();
              }
              out_ << " => ";
              emit_ref(*inner);
            },
            [&](const raw::App& a) {
              emit(a.fn, kApp);
              out_ << ' ';
              emit(a.arg, kAtom);
            },
            [&](const raw::Pair& p) { form("pair", {&p.first, &p.second}); },
            [&](const raw::Fst& f) { form("fst", {&f.pair}); },
            [&](const raw::Snd& s) { form("snd", {&s.pair}); },
            [&](const raw::IdTy& i) { form("Id", {&i.type, &i.lhs, &i.rhs}); },
            [&](const raw::Refl& r) { form("refl", {&r.type, &r.point}); },
            [&](const raw::J& j) {
              form("J", {&j.type, &j.base, &j.motive, &j.base_case, &j.endpoint, &j.proof});
            },
            [&](const raw::Empty&) { out_ << "N0"; },
            [&](const raw::ElimEmpty& e) { form("elim0", {&e.motive, &e.scrutinee}); },
            [&](const raw::Unit&) { out_ << "N1"; },
            [&](const raw::Star&) { out_ << "star"; },
            [&](const raw::ElimUnit& e) { form("elim1", {&e.motive, &e.star_case, &e.scrutinee}); },
            [&](const raw::Bool&) { out_ << "N2"; },
            [&](const raw::BZero&) { out_ << "b0"; },
            [&](const raw::BOne&) { out_ << "b1"; },
            [&](const raw::ElimBool& e) {
              form("elim2", {&e.motive, &e.zero_case, &e.one_case, &e.scrutinee});
            },
            [&](const raw::Ann& a) {
              out_ << '(';
              emit(a.term, kTerm);
              out_ << " : ";
              emit(a.type, kTerm);
              out_ << ')';
            },
        },
        t.node);
  }

  // Lambda bodies extend as far right as possible, so they never need parentheses.
  void emit_ref(const RawTerm& t) { body(t); }

  std::ostringstream out_;
};

class AlphaEq {
 public:
  bool eq(const RawPtr& a, const RawPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const T& y = std::get<T>(b->node);
          return same(x, y);
        },
        a->node);
  }

 private:
  // Position from the innermost binder, or -1 when free.
  static long depth_of(const std::vector<std::string>& scope, const std::string& name) {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i] == name) return static_cast<long>(scope.size() - 1 - i);
    }
    return -1;
  }

  bool under(const std::string& x, const std::string& y, const RawPtr& a, const RawPtr& b) {
    left_.push_back(x);
    right_.push_back(y);
    bool r = eq(a, b);
    left_.pop_back();
    right_.pop_back();
    return r;
  }

  bool same(const raw::Var& x, const raw::Var& y) {
    long dx = depth_of(left_, x.name);
    long dy = depth_of(right_, y.name);
    if (dx < 0 && dy < 0) return x.name == y.name;
    return dx == dy;
  }
  bool same(const raw::Universe& x, const raw::Universe& y) { return x.level == y.level; }
  bool same(const raw::Pi& x, const raw::Pi& y) {
    return eq(x.domain, y.domain) && under(x.name, y.name, x.codomain, y.codomain);
  }
  bool same(const raw::Sigma& x, const raw::Sigma& y) {
    return eq(x.first, y.first) && under(x.name, y.name, x.second, y.second);
  }
  bool same(const raw::Lam& x, const raw::Lam& y) { return under(x.name, y.name, x.body, y.body); }
  bool same(const raw::App& x, const raw::App& y) { return eq(x.fn, y.fn) && eq(x.arg, y.arg); }
  bool same(const raw::Pair& x, const raw::Pair& y) {
    return eq(x.first, y.first) && eq(x.second, y.second);
  }
  bool same(const raw::Fst& x, const raw::Fst& y) { return eq(x.pair, y.pair); }
  bool same(const raw::Snd& x, const raw::Snd& y) { return eq(x.pair, y.pair); }
  bool same(const raw::IdTy& x, const raw::IdTy& y) {
    return eq(x.type, y.type) && eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs);
  }
  bool same(const raw::Refl& x, const raw::Refl& y) {
    return eq(x.type, y.type) && eq(x.point, y.point);
  }
  bool same(const raw::J& x, const raw::J& y) {
    return eq(x.type, y.type) && eq(x.base, y.base) && eq(x.motive, y.motive) &&
           eq(x.base_case, y.base_case) && eq(x.endpoint, y.endpoint) && eq(x.proof, y.proof);
  }
  bool same(const raw::ElimEmpty& x, const raw::ElimEmpty& y) {
    return eq(x.motive, y.motive) && eq(x.scrutinee, y.scrutinee);
  }
  bool same(const raw::ElimUnit& x, const raw::ElimUnit& y) {
    return eq(x.motive, y.motive) && eq(x.star_case, y.star_case) && eq(x.scrutinee, y.scrutinee);
  }
  bool same(const raw::ElimBool& x, const raw::ElimBool& y) {
    return eq(x.motive, y.motive) && eq(x.zero_case, y.zero_case) &&
           eq(x.one_case, y.one_case) && eq(x.scrutinee, y.scrutinee);
  }
  bool same(const raw::Ann& x, const raw::Ann& y) {
    return eq(x.term, y.term) && eq(x.type, y.type);
  }
  template <class T>
  bool same(const T&, const T&) {
    return true;  // nullary formers
  }

  std::vector<std::string> left_;
  std::vector<std::string> right_;
};

class FreeNames {
 public:
  std::vector<std::string> out;

  void walk(const RawPtr& t) {
    std::visit(overloaded{
                   [&](const raw::Var& v) {
                     if (std::find(bound_.begin(), bound_.end(), v.name) == bound_.end() &&
                         std::find(out.begin(), out.end(), v.name) == out.end()) {
                       out.push_back(v.name);
                     }
                   },
                   [&](const raw::Pi& p) {
                     walk(p.domain);
                     bind(p.name, p.codomain);
                   },
                   [&](const raw::Sigma& s) {
                     walk(s.first);
                     bind(s.name, s.second);
                   },
                   [&](const raw::Lam& l) { bind(l.name, l.body); },
                   [&](const raw::App& a) { walk(a.fn), walk(a.arg); },
                   [&](const raw::Pair& p) { walk(p.first), walk(p.second); },
                   [&](const raw::Fst& f) { walk(f.pair); },
                   [&](const raw::Snd& s) { walk(s.pair); },
                   [&](const raw::IdTy& i) { walk(i.type), walk(i.lhs), walk(i.rhs); },
                   [&](const raw::Refl& r) { walk(r.type), walk(r.point); },
                   [&](const raw::J& j) {
                     for (const RawPtr* p :
                          {&j.type, &j.base, &j.motive, &j.base_case, &j.endpoint, &j.proof}) {
                       walk(*p);
                     }
                   },
                   [&](const raw::ElimEmpty& e) { walk(e.motive), walk(e.scrutinee); },
                   [&](const raw::ElimUnit& e) {
                     walk(e.motive), walk(e.star_case), walk(e.scrutinee);
                   },
                   [&](const raw::ElimBool& e) {
                     walk(e.motive), walk(e.zero_case), walk(e.one_case), walk(e.scrutinee);
                   },
                   [&](const raw::Ann& a) { walk(a.term), walk(a.type); },
                   [](const auto&) {},
               },
               t->node);
  }

 private:
  void bind(const std::string& name, const RawPtr& body) {
    bound_.push_back(name);
    walk(body);
    bound_.pop_back();
  }

  std::vector<std::string> bound_;
};

}  // namespace

std::string print_term(const RawPtr& term) { return Printer().run(term); }

std::string print_decl(const RawDecl& decl) {
  std::string out = decl.kind == DeclKind::Def ? "def " : "axiom ";
  out += decl.name;
  if (decl.type_expr) out += " : " + print_term(decl.type_expr);
  if (decl.kind == DeclKind::Def) out += " := " + print_term(decl.body);
  out += ";";
  return out;
}

bool alpha_equal(const RawPtr& a, const RawPtr& b) { return AlphaEq().eq(a, b); }

std::vector<std::string> free_names(const RawPtr& term) {
  FreeNames f;
  f.walk(term);
  return std::move(f.out);
}

}  // namespace tcat
