#include "imprec/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace imprec {

namespace {

struct Sexp {
  bool atom = false;
  std::string text;
  std::vector<Sexp> kids;
  int line = 0, col = 0;
};

struct Lexer {
  const std::string& s;
  std::size_t i = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& src) : s(src) {}

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip_ws() {
    while (i < s.size()) {
      char c = s[i];
      if (c == ';') {
        while (i < s.size() && s[i] != '\n') bump(s[i]);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump(c);
      } else {
        break;
      }
    }
  }

  Sexp parse() {
    skip_ws();
    if (i >= s.size()) throw ParseError(line, col, "unexpected end of input");
    Sexp e;
    e.line = line;
    e.col = col;
    if (s[i] == '(') {
      bump('(');
      while (true) {
        skip_ws();
        if (i >= s.size()) throw ParseError(e.line, e.col, "unclosed '('");
        if (s[i] == ')') {
          bump(')');
          break;
        }
        e.kids.push_back(parse());
      }
      return e;
    }
    if (s[i] == ')') throw ParseError(line, col, "unexpected ')'");
    e.atom = true;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
           s[i] != '(' && s[i] != ')' && s[i] != ';') {
      e.text += static_cast<char>(
          std::tolower(static_cast<unsigned char>(s[i])));
      bump(s[i]);
    }
    return e;
  }
};

Sexp parse_sexp(const std::string& text) {
  Lexer lx(text);
  Sexp e = lx.parse();
  lx.skip_ws();
  if (lx.i < text.size())
    throw ParseError(lx.line, lx.col, "trailing content after top-level form");
  return e;
}

const std::string& atom(const Sexp& e, const char* what) {
  if (!e.atom) throw ParseError(e.line, e.col, std::string("expected ") + what);
  return e.text;
}

bool head_is(const Sexp& e, const std::string& kw) {
  return !e.atom && !e.kids.empty() && e.kids[0].atom && e.kids[0].text == kw;
}

// Parses "x y - t a b - u c" style typed lists.
std::vector<TypedName> parse_typed_list(const std::vector<Sexp>& items,
                                        std::size_t from = 0) {
  std::vector<TypedName> out;
  std::vector<std::string> pending;
  for (std::size_t i = from; i < items.size(); ++i) {
    const std::string& t = atom(items[i], "name in typed list");
    if (t == "-") {
      if (i + 1 >= items.size())
        throw ParseError(items[i].line, items[i].col, "dangling '-' in typed list");
      const std::string& ty = atom(items[i + 1], "type name");
      for (auto& p : pending) out.push_back({p, ty});
      pending.clear();
      ++i;
    } else {
      pending.push_back(t);
    }
  }
  for (auto& p : pending) out.push_back({p, "object"});
  return out;
}

Literal parse_literal(const Sexp& e, bool allow_neg) {
  if (e.atom) throw ParseError(e.line, e.col, "expected a literal");
  if (e.kids.empty()) throw ParseError(e.line, e.col, "empty literal");
  if (head_is(e, "not")) {
    if (!allow_neg)
      throw ParseError(e.line, e.col, "negated literal not allowed here");
    if (e.kids.size() != 2)
      throw ParseError(e.line, e.col, "(not ...) takes one literal");
    Literal l = parse_literal(e.kids[1], false);
    l.neg = true;
    return l;
  }
  Literal l;
  l.pred = atom(e.kids[0], "predicate name");
  for (std::size_t i = 1; i < e.kids.size(); ++i)
    l.args.push_back(atom(e.kids[i], "argument"));
  return l;
}

std::vector<Literal> parse_formula(const Sexp& e, bool allow_neg) {
  std::vector<Literal> out;
  if (!e.atom && e.kids.empty()) return out;  // ()
  if (head_is(e, "and")) {
    for (std::size_t i = 1; i < e.kids.size(); ++i)
      out.push_back(parse_literal(e.kids[i], allow_neg));
  } else {
    out.push_back(parse_literal(e, allow_neg));
  }
  return out;
}

void check_literal(const LiftedDomain& d, const LiftedOperator& op,
                   const Literal& l) {
  const auto* params = d.find_predicate(l.pred);
  if (!params)
    throw UndeclaredPredicate("undeclared predicate '" + l.pred +
                              "' in action " + op.name);
  if (params->size() != l.args.size())
    throw ArityMismatch("predicate '" + l.pred + "' used with " +
                        std::to_string(l.args.size()) + " args (declared " +
                        std::to_string(params->size()) + ") in action " +
                        op.name);
  for (const auto& a : l.args) {
    if (a.size() > 1 && a[0] == '?') {
      bool found = false;
      for (const auto& p : op.params)
        if ("?" + p.name == a || p.name == a) found = true;
      if (!found)
        throw ParseError(0, 0, "variable " + a + " not a parameter of action " +
                                   op.name);
    }
  }
}

std::string lit_atom(const Literal& l) {
  std::string s = "(" + l.pred;
  for (const auto& a : l.args) s += " " + a;
  return s + ")";
}

}  // namespace

bool LiftedDomain::is_subtype(const std::string& t,
                              const std::string& target) const {
  if (target == "object" || t == target) return true;
  std::string cur = t;
  for (int guard = 0; guard < 64; ++guard) {
    auto it = type_parent.find(cur);
    if (it == type_parent.end() || it->second.empty()) return false;
    cur = it->second;
    if (cur == target) return true;
  }
  return false;
}

LiftedDomain parse_domain(const std::string& text) {
  Sexp root = parse_sexp(text);
  if (!head_is(root, "define"))
    throw ParseError(root.line, root.col, "expected (define (domain ...))");
  LiftedDomain d;
  for (std::size_t i = 1; i < root.kids.size(); ++i) {
    const Sexp& sec = root.kids[i];
    if (head_is(sec, "domain")) {
      d.name = atom(sec.kids.at(1), "domain name");
    } else if (head_is(sec, ":requirements")) {
      for (std::size_t j = 1; j < sec.kids.size(); ++j) {
        d.requirements.push_back(atom(sec.kids[j], "requirement"));
        if (sec.kids[j].text == ":typing") d.typing = true;
      }
    } else if (head_is(sec, ":types")) {
      auto typed = parse_typed_list(sec.kids, 1);
      for (auto& tn : typed) {
        d.type_parent[tn.name] = tn.type == "object" ? "object" : tn.type;
        d.type_order.push_back(tn.name);
      }
    } else if (head_is(sec, ":predicates")) {
      for (std::size_t j = 1; j < sec.kids.size(); ++j) {
        const Sexp& p = sec.kids[j];
        if (p.atom || p.kids.empty() || !p.kids[0].atom)
          throw ParseError(p.line, p.col, "bad predicate declaration");
        std::vector<Sexp> rest(p.kids.begin() + 1, p.kids.end());
        auto params = parse_typed_list(rest);
        for (auto& tn : params)
          if (!tn.name.empty() && tn.name[0] == '?') tn.name.erase(0, 1);
        d.predicates.emplace_back(p.kids[0].text, params);
      }
    } else if (head_is(sec, ":action")) {
      LiftedOperator op;
      op.name = atom(sec.kids.at(1), "action name");
      for (std::size_t j = 2; j < sec.kids.size(); ++j) {
        const Sexp& item = sec.kids[j];
        if (item.atom) {
          const std::string& kw = item.text;
          if (j + 1 >= sec.kids.size())
            throw ParseError(item.line, item.col, "missing value after " + kw);
          const Sexp& val = sec.kids[++j];
          if (kw == ":parameters") {
            op.params = parse_typed_list(val.kids);
            for (auto& tn : op.params)
              if (!tn.name.empty() && tn.name[0] == '?') tn.name.erase(0, 1);
          } else if (kw == ":precondition") {
            op.pre = parse_formula(val, false);
          } else if (kw == ":effect") {
            for (auto& l : parse_formula(val, true)) {
              if (l.neg) {
                l.neg = false;
                op.del.push_back(l);
              } else {
                op.add.push_back(l);
              }
            }
          } else {
            throw ParseError(item.line, item.col, "unknown keyword " + kw);
          }
        } else if (head_is(item, ":poss-precondition")) {
          for (std::size_t k = 1; k < item.kids.size(); ++k)
            op.poss_pre.push_back(parse_literal(item.kids[k], false));
        } else if (head_is(item, ":poss-effect")) {
          for (std::size_t k = 1; k < item.kids.size(); ++k) {
            Literal l = parse_literal(item.kids[k], true);
            if (l.neg) {
              l.neg = false;
              op.poss_del.push_back(l);
            } else {
              op.poss_add.push_back(l);
            }
          }
        } else {
          throw ParseError(item.line, item.col, "unexpected form in action body");
        }
      }
      d.operators.push_back(std::move(op));
    } else {
      throw ParseError(sec.line, sec.col, "unknown domain section");
    }
  }
  for (const auto& op : d.operators) {
    for (const auto* lst :
         {&op.pre, &op.poss_pre, &op.add, &op.del, &op.poss_add, &op.poss_del})
      for (const auto& l : *lst) check_literal(d, op, l);
  }
  return d;
}

ProblemFile parse_problem(const std::string& text) {
  Sexp root = parse_sexp(text);
  if (!head_is(root, "define"))
    throw ParseError(root.line, root.col, "expected (define (problem ...))");
  ProblemFile pf;
  for (std::size_t i = 1; i < root.kids.size(); ++i) {
    const Sexp& sec = root.kids[i];
    if (head_is(sec, "problem")) {
      pf.name = atom(sec.kids.at(1), "problem name");
    } else if (head_is(sec, ":objects")) {
      pf.objects = parse_typed_list(sec.kids, 1);
    } else if (head_is(sec, ":init")) {
      for (std::size_t j = 1; j < sec.kids.size(); ++j)
        pf.init.push_back(lit_atom(parse_literal(sec.kids[j], false)));
    }
    // :domain and :goal (often a hypothesis placeholder) are ignored.
  }
  return pf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string canon_atom(const std::string& raw) {
  // Normalizes "(on a b)" / "on a b" to "(on a b)", lowercased.
  std::string s;
  for (char c : raw)
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  s = trim(s);
  if (!s.empty() && s.front() == '(') s = trim(s.substr(1, s.rfind(')') - 1));
  std::istringstream in(s);
  std::string tok, out = "(";
  bool first = true;
  while (in >> tok) {
    if (!first) out += " ";
    out += tok;
    first = false;
  }
  return out + ")";
}

std::vector<std::string> split_atoms(const std::string& line) {
  // Comma-separated ground atoms, e.g. "(on a b),(ontable b)".
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!trim(cur).empty()) out.push_back(canon_atom(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(canon_atom(cur));
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::string text = read_file(path);
  std::vector<std::string> out;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == ';') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

RecognitionProblem parse_recognition_bundle(const std::string& dir) {
  RecognitionProblem rp;
  rp.domain = parse_domain(read_file(dir + "/domain.pddl"));
  ProblemFile pf = parse_problem(read_file(dir + "/template.pddl"));
  rp.objects = pf.objects;
  rp.init = pf.init;
  for (const auto& line : read_lines(dir + "/hyps.dat"))
    rp.hypotheses.push_back(split_atoms(line));
  auto real = read_lines(dir + "/real_hyp.dat");
  if (real.empty()) throw MissingFile(dir + "/real_hyp.dat is empty");
  auto hidden = split_atoms(real[0]);
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (std::size_t i = 0; i < rp.hypotheses.size(); ++i)
    if (sorted(rp.hypotheses[i]) == sorted(hidden))
      rp.hidden_goal = static_cast<int>(i);
  if (rp.hidden_goal < 0)
    throw HiddenGoalNotInHypotheses("real_hyp.dat does not match any hyps.dat line");
  std::ifstream obs_file(dir + "/obs.dat");
  if (!obs_file) throw MissingFile("cannot open " + dir + "/obs.dat");
  for (const auto& line : read_lines(dir + "/obs.dat"))
    rp.observations.push_back(canon_atom(line));
  return rp;
}

namespace {

struct Grounder {
  const LiftedDomain& d;
  const std::vector<TypedName>& objects;
  GroundedTask& task;

  std::vector<const TypedName*> of_type(const std::string& t) const {
    std::vector<const TypedName*> out;
    for (const auto& o : objects)
      if (d.is_subtype(o.type, t)) out.push_back(&o);
    return out;
  }

  int instantiate(const Literal& l,
                  const std::vector<const TypedName*>& binding,
                  const LiftedOperator& op) const {
    std::string s = "(" + l.pred;
    for (const auto& a : l.args) {
      if (!a.empty() && a[0] == '?') {
        std::string var = a.substr(1);
        int idx = -1;
        for (std::size_t i = 0; i < op.params.size(); ++i)
          if (op.params[i].name == var) idx = static_cast<int>(i);
        s += " " + binding[static_cast<std::size_t>(idx)]->name;
      } else {
        s += " " + a;
      }
    }
    return task.facts.intern(s + ")");
  }

  void ground_operator(const LiftedOperator& op, int op_index) {
    std::vector<const TypedName*> binding(op.params.size(), nullptr);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == op.params.size()) {
        IncompleteAction a;
        a.op_index = op_index;
        std::string sig = "(" + op.name;
        for (const auto* b : binding) sig += " " + b->name;
        a.name = sig + ")";
        auto fill = [&](const std::vector<Literal>& src, std::vector<int>& dst) {
          for (const auto& l : src) dst.push_back(instantiate(l, binding, op));
          std::sort(dst.begin(), dst.end());
          dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
        };
        fill(op.pre, a.pre);
        fill(op.poss_pre, a.poss_pre);
        fill(op.add, a.add);
        fill(op.del, a.del);
        fill(op.poss_add, a.poss_add);
        fill(op.poss_del, a.poss_del);
        task.action_ids.emplace(a.name, static_cast<int>(task.actions.size()));
        task.actions.push_back(std::move(a));
        return;
      }
      for (const auto* o : of_type(op.params[k].type)) {
        binding[k] = o;
        rec(k + 1);
      }
    };
    rec(0);
  }
};

}  // namespace

GroundedTask ground(const LiftedDomain& domain,
                    const std::vector<TypedName>& objects,
                    const std::vector<std::string>& init_atoms,
                    const std::vector<std::string>& goal_atoms) {
  GroundedTask task;
  std::vector<int> init_ids;
  for (const auto& a : init_atoms) init_ids.push_back(task.facts.intern(canon_atom(a)));
  Grounder g{domain, objects, task};
  for (std::size_t i = 0; i < domain.operators.size(); ++i)
    g.ground_operator(domain.operators[i], static_cast<int>(i));
  for (const auto& a : goal_atoms) task.goal.push_back(task.facts.intern(canon_atom(a)));
  task.init = Bits(task.facts.size());
  for (int f : init_ids) task.init.set(static_cast<std::size_t>(f));
  for (const auto& op : domain.operators)
    task.lifted_poss_counts.push_back(op.poss_count());
  return task;
}

GroundedProblem ground_problem(const RecognitionProblem& rp) {
  GroundedProblem gp;
  // Ground once with the union of all hypothesis atoms so every goal fact is
  // interned, then resolve each hypothesis against the shared table.
  std::vector<std::string> all_goal_atoms;
  for (const auto& h : rp.hypotheses)
    all_goal_atoms.insert(all_goal_atoms.end(), h.begin(), h.end());
  gp.task = ground(rp.domain, rp.objects, rp.init, all_goal_atoms);
  for (const auto& h : rp.hypotheses) {
    std::vector<int> ids;
    for (const auto& a : h) {
      int id = gp.task.facts.find(canon_atom(a));
      if (id < 0) id = -1;  // cannot happen: interned above
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    gp.hyp_goals.push_back(ids);
  }
  gp.hidden = rp.hidden_goal;
  gp.task.goal = gp.hyp_goals[static_cast<std::size_t>(gp.hidden)];
  for (const auto& o : rp.observations) {
    auto it = gp.task.action_ids.find(o);
    if (it == gp.task.action_ids.end())
      throw UnresolvableObservation("observation does not name a grounded action: " + o);
    gp.obs.push_back(it->second);
  }
  return gp;
}

LiftedDomain known_projection(const LiftedDomain& d) {
  LiftedDomain out = d;
  for (auto& op : out.operators) {
    op.poss_pre.clear();
    op.poss_add.clear();
    op.poss_del.clear();
  }
  return out;
}

GroundedTask known_projection(const GroundedTask& t) {
  GroundedTask out = t;
  for (auto& a : out.actions) {
    a.poss_pre.clear();
    a.poss_add.clear();
    a.poss_del.clear();
  }
  out.lifted_poss_counts.assign(out.lifted_poss_counts.size(), 0);
  return out;
}

namespace {

void emit_literal(std::ostringstream& os, const Literal& l, bool neg) {
  if (neg) os << "(not ";
  os << "(" << l.pred;
  for (const auto& a : l.args) os << " " << a;
  os << ")";
  if (neg) os << ")";
}

void emit_typed(std::ostringstream& os, const std::vector<TypedName>& list,
                bool vars) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) os << " ";
    os << (vars ? "?" : "") << list[i].name << " - " << list[i].type;
  }
}

}  // namespace

std::string serialize_domain(const LiftedDomain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    os << "  (:requirements";
    for (const auto& r : d.requirements) os << " " << r;
    os << ")\n";
  }
  if (!d.type_order.empty()) {
    os << "  (:types";
    for (const auto& t : d.type_order) {
      os << " " << t;
      auto it = d.type_parent.find(t);
      if (it != d.type_parent.end() && !it->second.empty() &&
          it->second != "object")
        os << " - " << it->second;
    }
    os << ")\n";
  }
  os << "  (:predicates";
  for (const auto& [n, params] : d.predicates) {
    os << " (" << n;
    for (const auto& p : params) os << " ?" << p.name << " - " << p.type;
    os << ")";
  }
  os << ")\n";
  for (const auto& op : d.operators) {
    os << "  (:action " << op.name << "\n    :parameters (";
    emit_typed(os, op.params, true);
    os << ")\n    :precondition (and";
    for (const auto& l : op.pre) {
      os << " ";
      emit_literal(os, l, false);
    }
    os << ")\n    :effect (and";
    for (const auto& l : op.add) {
      os << " ";
      emit_literal(os, l, false);
    }
    for (const auto& l : op.del) {
      os << " ";
      emit_literal(os, l, true);
    }
    os << ")\n";
    if (!op.poss_pre.empty()) {
      os << "    (:poss-precondition";
      for (const auto& l : op.poss_pre) {
        os << " ";
        emit_literal(os, l, false);
      }
      os << ")\n";
    }
    if (!op.poss_add.empty() || !op.poss_del.empty()) {
      os << "    (:poss-effect";
      for (const auto& l : op.poss_add) {
        os << " ";
        emit_literal(os, l, false);
      }
      for (const auto& l : op.poss_del) {
        os << " ";
        emit_literal(os, l, true);
      }
      os << ")\n";
    }
    os << "  )\n";
  }
  os << ")\n";
  return os.str();
}

bool structurally_equal(const LiftedDomain& a, const LiftedDomain& b) {
  auto sorted = [](std::vector<Literal> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (a.name != b.name || a.typing != b.typing ||
      a.predicates != b.predicates || a.type_parent != b.type_parent ||
      a.operators.size() != b.operators.size())
    return false;
  for (std::size_t i = 0; i < a.operators.size(); ++i) {
    const auto& x = a.operators[i];
    const auto& y = b.operators[i];
    if (x.name != y.name || x.params != y.params) return false;
    if (sorted(x.pre) != sorted(y.pre)) return false;
    if (sorted(x.poss_pre) != sorted(y.poss_pre)) return false;
    if (sorted(x.add) != sorted(y.add)) return false;
    if (sorted(x.del) != sorted(y.del)) return false;
    if (sorted(x.poss_add) != sorted(y.poss_add)) return false;
    if (sorted(x.poss_del) != sorted(y.poss_del)) return false;
  }
  return true;
}

}  // namespace imprec
