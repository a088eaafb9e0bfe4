#include "navq/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace navq {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::shared_ptr<const Node> make_node(Kind k, std::string label, std::shared_ptr<const Node> l,
                                      std::shared_ptr<const Node> r) {
  std::size_t h = std::hash<int>()(static_cast<int>(k));
  if (!label.empty()) h = mix(h, std::hash<std::string>()(label));
  if (l) h = mix(h, l->hash);
  if (r) h = mix(h, r->hash);
  return std::make_shared<const Node>(Node{k, std::move(label), std::move(l), std::move(r), h});
}

const std::shared_ptr<const Node>& empty_node() {
  static const std::shared_ptr<const Node> n = make_node(Kind::kEmpty, "", nullptr, nullptr);
  return n;
}

const std::shared_ptr<const Node>& identity_node() {
  static const std::shared_ptr<const Node> n = make_node(Kind::kIdentity, "", nullptr, nullptr);
  return n;
}

const std::shared_ptr<const Node>& diversity_node() {
  static const std::shared_ptr<const Node> n = make_node(Kind::kDiversity, "", nullptr, nullptr);
  return n;
}

bool node_equal(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->label != b->label) return false;
  if ((a->l == nullptr) != (b->l == nullptr) || (a->r == nullptr) != (b->r == nullptr)) return false;
  if (a->l && !node_equal(a->l.get(), b->l.get())) return false;
  if (a->r && !node_equal(a->r.get(), b->r.get())) return false;
  return true;
}

int node_compare(const Node* a, const Node* b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->label != b->label) return a->label < b->label ? -1 : 1;
  if (a->l) {
    int c = node_compare(a->l.get(), b->l.get());
    if (c != 0) return c;
  }
  if (a->r) return node_compare(a->r.get(), b->r.get());
  return 0;
}

}  // namespace

Expr::Expr() : node_(empty_node()) {}

Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::label() const { return node_->label; }
Expr Expr::left() const { return Expr(node_->l); }
Expr Expr::right() const { return Expr(node_->r); }
bool Expr::is_unary() const { return node_->l != nullptr && node_->r == nullptr; }
bool Expr::is_binary() const { return node_->r != nullptr; }
bool Expr::is_atom() const { return node_->l == nullptr; }
std::size_t Expr::hash() const { return node_->hash; }

bool Expr::operator==(const Expr& o) const { return node_equal(node_.get(), o.node_.get()); }
bool Expr::operator<(const Expr& o) const { return node_compare(node_.get(), o.node_.get()) < 0; }

Expr Expr::empty() { return Expr(empty_node()); }
Expr Expr::identity() { return Expr(identity_node()); }
Expr Expr::diversity() { return Expr(diversity_node()); }
Expr Expr::label(std::string name) { return Expr(make_node(Kind::kLabel, std::move(name), nullptr, nullptr)); }
Expr Expr::unary(Kind k, Expr e) { return Expr(make_node(k, "", e.node_, nullptr)); }
Expr Expr::binary(Kind k, Expr l, Expr r) { return Expr(make_node(k, "", l.node_, r.node_)); }

Expr empty() { return Expr::empty(); }
Expr id() { return Expr::identity(); }
Expr di() { return Expr::diversity(); }
Expr lbl(const std::string& name) { return Expr::label(name); }
Expr conv(Expr e) { return Expr::unary(Kind::kConverse, std::move(e)); }
Expr plus(Expr e) { return Expr::unary(Kind::kPlus, std::move(e)); }
Expr star(Expr e) { return unite(id(), plus(std::move(e))); }
Expr pi1(Expr e) { return Expr::unary(Kind::kProj1, std::move(e)); }
Expr pi2(Expr e) { return Expr::unary(Kind::kProj2, std::move(e)); }
Expr copi1(Expr e) { return Expr::unary(Kind::kCoproj1, std::move(e)); }
Expr copi2(Expr e) { return Expr::unary(Kind::kCoproj2, std::move(e)); }
Expr compose(Expr l, Expr r) { return Expr::binary(Kind::kCompose, std::move(l), std::move(r)); }
Expr unite(Expr l, Expr r) { return Expr::binary(Kind::kUnion, std::move(l), std::move(r)); }
Expr intersect(Expr l, Expr r) { return Expr::binary(Kind::kIntersect, std::move(l), std::move(r)); }
Expr minus(Expr l, Expr r) { return Expr::binary(Kind::kDifference, std::move(l), std::move(r)); }

Expr power(Expr e, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  Expr out = id();
  for (int i = 0; i < k; ++i) out = compose(e, out);
  return out;
}

Expr compose_all(const std::vector<Expr>& es) {
  if (es.empty()) return id();
  Expr out = es[0];
  for (std::size_t i = 1; i < es.size(); ++i) out = compose(out, es[i]);
  return out;
}

Expr unite_all(const std::vector<Expr>& es) {
  if (es.empty()) return empty();
  Expr out = es[0];
  for (std::size_t i = 1; i < es.size(); ++i) out = unite(out, es[i]);
  return out;
}

Expr all_edges(const std::vector<std::string>& alphabet) {
  std::vector<Expr> ls;
  for (const auto& a : alphabet) ls.push_back(lbl(a));
  return unite_all(ls);
}

// ---------------------------------------------------------------- parser

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& alphabet)
      : s_(text), alphabet_(alphabet) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr e = diff();
    while (accept('|')) e = unite(e, diff());
    return e;
  }

  Expr diff() {
    Expr e = inter();
    while (accept('\\')) e = minus(e, inter());
    return e;
  }

  Expr inter() {
    Expr e = comp();
    while (accept('&')) e = intersect(e, comp());
    return e;
  }

  Expr comp() {
    Expr e = post();
    while (accept('.')) e = compose(e, post());
    return e;
  }

  Expr post() {
    Expr e = atom();
    for (;;) {
      if (accept('+')) {
        e = plus(e);
      } else if (accept('*')) {
        e = star(e);
      } else if (accept('^')) {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') fail("power exponent must be non-negative");
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer after '^'");
        long k = std::stol(s_.substr(start, pos_ - start));
        if (k > 100000) fail("power exponent too large");
        e = power(e, static_cast<int>(k));
      } else {
        return e;
      }
    }
  }

  Expr wrapped(Kind k) {
    expect('(');
    Expr inner = expr();
    expect(')');
    return Expr::unary(k, inner);
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (c != '0' || (pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))))
        fail("only the literal 0 is a numeric atom");
      ++pos_;
      return empty();
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string w = s_.substr(start, pos_ - start);
    if (w == "id") return id();
    if (w == "di") return di();
    if (w == "A") return unite(id(), di());
    if (w == "E") {
      if (alphabet_.empty()) {
        pos_ = start;
        fail("E used without a declared alphabet");
      }
      return all_edges(alphabet_);
    }
    if (w == "conv") return wrapped(Kind::kConverse);
    if (w == "pi1") return wrapped(Kind::kProj1);
    if (w == "pi2") return wrapped(Kind::kProj2);
    if (w == "copi1") return wrapped(Kind::kCoproj1);
    if (w == "copi2") return wrapped(Kind::kCoproj2);
    if (w == "pi" || w == "copi") {
      pos_ = start;
      fail("unknown keyword '" + w + "' (use " + w + "1 or " + w + "2)");
    }
    return lbl(w);
  }

  const std::string& s_;
  const std::vector<std::string>& alphabet_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

constexpr int kPrecUnion = 1;
constexpr int kPrecDiff = 2;
constexpr int kPrecInter = 3;
constexpr int kPrecComp = 4;
constexpr int kPrecPost = 5;
constexpr int kPrecAtom = 6;

// e = Union(id, Plus(x)) is printed as x*.
bool star_operand(const Expr& e, Expr* x) {
  if (e.kind() != Kind::kUnion || e.left().kind() != Kind::kIdentity || e.right().kind() != Kind::kPlus) return false;
  *x = e.right().left();
  return true;
}

// e = x.(x.(...(x.id))) with k >= 1 copies is printed as x^k.
bool power_operand(const Expr& e, Expr* x, int* k) {
  if (e.kind() != Kind::kCompose) return false;
  Expr base = e.left();
  int n = 0;
  Expr cur = e;
  while (cur.kind() == Kind::kCompose && cur.left() == base) {
    ++n;
    cur = cur.right();
  }
  if (cur.kind() != Kind::kIdentity) return false;
  *x = base;
  *k = n;
  return true;
}

int precedence(const Expr& e) {
  Expr x;
  int k;
  if (star_operand(e, &x) || power_operand(e, &x, &k)) return kPrecPost;
  switch (e.kind()) {
    case Kind::kUnion:
      return kPrecUnion;
    case Kind::kDifference:
      return kPrecDiff;
    case Kind::kIntersect:
      return kPrecInter;
    case Kind::kCompose:
      return kPrecComp;
    case Kind::kPlus:
      return kPrecPost;
    default:
      return kPrecAtom;
  }
}

void print(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  Expr x;
  int k = 0;
  if (star_operand(e, &x)) {
    print_at(x, kPrecPost, out);
    out += '*';
    return;
  }
  if (power_operand(e, &x, &k)) {
    print_at(x, kPrecPost, out);
    out += '^';
    out += std::to_string(k);
    return;
  }
  auto unary_call = [&](const char* name) {
    out += name;
    out += '(';
    print(e.left(), out);
    out += ')';
  };
  auto binary = [&](int prec, const char* op) {
    print_at(e.left(), prec, out);
    out += op;
    print_at(e.right(), prec + 1, out);
  };
  switch (e.kind()) {
    case Kind::kEmpty:
      out += '0';
      return;
    case Kind::kIdentity:
      out += "id";
      return;
    case Kind::kDiversity:
      out += "di";
      return;
    case Kind::kLabel:
      out += e.label();
      return;
    case Kind::kConverse:
      return unary_call("conv");
    case Kind::kPlus:
      print_at(e.left(), kPrecPost, out);
      out += '+';
      return;
    case Kind::kProj1:
      return unary_call("pi1");
    case Kind::kProj2:
      return unary_call("pi2");
    case Kind::kCoproj1:
      return unary_call("copi1");
    case Kind::kCoproj2:
      return unary_call("copi2");
    case Kind::kCompose:
      return binary(kPrecComp, ".");
    case Kind::kUnion:
      return binary(kPrecUnion, " | ");
    case Kind::kIntersect:
      return binary(kPrecInter, " & ");
    case Kind::kDifference:
      return binary(kPrecDiff, " \\ ");
  }
}

}  // namespace

Expr parse(const std::string& text, const std::vector<std::string>& alphabet) {
  return Parser(text, alphabet).run();
}

std::string render(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// ---------------------------------------------------------------- metrics

int size(const Expr& e) {
  if (e.is_atom()) return 0;
  if (e.is_unary()) return 1 + size(e.left());
  return 1 + size(e.left()) + size(e.right());
}

int ast_depth(const Expr& e) {
  if (e.is_atom()) return 0;
  if (e.is_unary()) return 1 + ast_depth(e.left());
  return 1 + std::max(ast_depth(e.left()), ast_depth(e.right()));
}

std::set<std::string> labels_of(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x.kind() == Kind::kLabel) out.insert(x.label());
    if (x.is_unary() || x.is_binary()) go(x.left());
    if (x.is_binary()) go(x.right());
  };
  go(e);
  return out;
}

// ---------------------------------------------------------------- fragments

namespace {
const char* kOpNames[kNumOps] = {"di", "conv", "tc", "pi1", "pi2", "copi1", "copi2", "cap", "minus"};
}

const char* op_name(Op o) { return kOpNames[static_cast<int>(o)]; }

Fragment::Fragment(std::initializer_list<Op> ops) {
  for (Op o : ops) add(o);
}

std::string Fragment::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < kNumOps; ++i) {
    if (!has(static_cast<Op>(i))) continue;
    if (!first) out += ", ";
    out += kOpNames[i];
    first = false;
  }
  return out + "}";
}

Fragment Fragment::parse(const std::string& text) {
  Fragment f;
  std::string word;
  auto flush = [&]() {
    if (word.empty()) return;
    bool found = false;
    for (int i = 0; i < kNumOps; ++i) {
      if (word == kOpNames[i]) {
        f.add(static_cast<Op>(i));
        found = true;
      }
    }
    // Grouped spellings.
    if (word == "pi") {
      f.add(Op::kPi1);
      f.add(Op::kPi2);
      found = true;
    } else if (word == "copi") {
      f.add(Op::kCopi1);
      f.add(Op::kCopi2);
      found = true;
    } else if (word == "intersect" || word == "&") {
      f.add(Op::kCap);
      found = true;
    } else if (word == "difference" || word == "-" || word == "\\") {
      f.add(Op::kMinus);
      found = true;
    }
    if (!found) throw std::invalid_argument("unknown operator '" + word + "'");
    word.clear();
  };
  for (char c : text) {
    if (c == '{' || c == '}' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      word += c;
    }
  }
  flush();
  return f;
}

Fragment operators_used(const Expr& e) {
  Fragment f;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    switch (x.kind()) {
      case Kind::kDiversity:
        f.add(Op::kDi);
        break;
      case Kind::kConverse:
        f.add(Op::kConv);
        break;
      case Kind::kPlus:
        f.add(Op::kTc);
        break;
      case Kind::kProj1:
        f.add(Op::kPi1);
        break;
      case Kind::kProj2:
        f.add(Op::kPi2);
        break;
      case Kind::kCoproj1:
        f.add(Op::kCopi1);
        break;
      case Kind::kCoproj2:
        f.add(Op::kCopi2);
        break;
      case Kind::kIntersect:
        f.add(Op::kCap);
        break;
      case Kind::kDifference:
        f.add(Op::kMinus);
        break;
      default:
        break;
    }
    if (!x.is_atom()) go(x.left());
    if (x.is_binary()) go(x.right());
  };
  go(e);
  return f;
}

Fragment base_closure(Fragment f) {
  using O = Op;
  struct Rule {
    O target;
    Fragment needs;
  };
  static const std::vector<Rule> rules = {
      {O::kPi1, {O::kCopi1}},         {O::kPi1, {O::kConv, O::kCap}}, {O::kPi1, {O::kDi, O::kCap}},
      {O::kPi1, {O::kPi2, O::kConv}}, {O::kPi2, {O::kCopi2}},         {O::kPi2, {O::kConv, O::kCap}},
      {O::kPi2, {O::kDi, O::kCap}},   {O::kPi2, {O::kPi1, O::kConv}}, {O::kCopi1, {O::kPi1, O::kMinus}},
      {O::kCopi1, {O::kCopi2, O::kConv}}, {O::kCopi2, {O::kPi2, O::kMinus}}, {O::kCopi2, {O::kCopi1, O::kConv}},
      {O::kCap, {O::kMinus}},
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      if (!f.has(r.target) && r.needs.subset_of(f)) {
        f.add(r.target);
        changed = true;
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------- simplification

namespace {

Expr rebuild(const Expr& e, const Expr& l, const Expr& r) {
  if (e.is_unary()) return (l.node() == e.left().node()) ? e : Expr::unary(e.kind(), l);
  if (l.node() == e.left().node() && r.node() == e.right().node()) return e;
  return Expr::binary(e.kind(), l, r);
}

Expr simplify_node(const Expr& e, bool units) {
  if (e.is_atom()) return e;
  Expr l = simplify_node(e.left(), units);
  Expr r = e.is_binary() ? simplify_node(e.right(), units) : Expr();
  const bool le = l.kind() == Kind::kEmpty;
  const bool re = e.is_binary() && r.kind() == Kind::kEmpty;
  switch (e.kind()) {
    case Kind::kConverse:
    case Kind::kPlus:
    case Kind::kProj1:
    case Kind::kProj2:
      if (le) return empty();
      break;
    case Kind::kCoproj1:
    case Kind::kCoproj2:
      if (le) return id();
      break;
    case Kind::kCompose:
      if (le || re) return empty();
      if (units) {
        if (l.kind() == Kind::kIdentity) return r;
        if (r.kind() == Kind::kIdentity) return l;
      }
      break;
    case Kind::kUnion:
      if (le) return r;
      if (re) return l;
      if (units) {
        std::vector<Expr> parts;
        std::function<void(const Expr&)> flat = [&](const Expr& x) {
          if (x.kind() == Kind::kUnion) {
            flat(x.left());
            flat(x.right());
          } else if (std::find(parts.begin(), parts.end(), x) == parts.end()) {
            parts.push_back(x);
          }
        };
        flat(l);
        flat(r);
        // x* stays x*; only rebuild when something was dropped.
        std::size_t count = 0;
        std::function<void(const Expr&)> cnt = [&](const Expr& x) {
          if (x.kind() == Kind::kUnion) {
            cnt(x.left());
            cnt(x.right());
          } else {
            ++count;
          }
        };
        cnt(l);
        cnt(r);
        if (parts.size() != count) return unite_all(parts);
      }
      break;
    case Kind::kIntersect:
      if (le || re) return empty();
      break;
    case Kind::kDifference:
      if (le) return empty();
      if (re) return l;
      break;
    default:
      break;
  }
  return rebuild(e, l, r);
}

}  // namespace

Expr simplify_empty(const Expr& e) { return simplify_node(e, false); }
Expr simplify_units(const Expr& e) { return simplify_node(e, true); }

bool is_downward(const Expr& e) {
  Fragment f = operators_used(e);
  return !f.has(Op::kDi) && !f.has(Op::kConv);
}

int condition_depth(const Expr& e) {
  switch (e.kind()) {
    case Kind::kEmpty:
    case Kind::kIdentity:
    case Kind::kLabel:
      return 0;
    case Kind::kPlus:
      return condition_depth(e.left());
    case Kind::kProj1:
    case Kind::kProj2:
      return 1 + condition_depth(e.left());
    case Kind::kCompose:
    case Kind::kUnion:
      return std::max(condition_depth(e.left()), condition_depth(e.right()));
    default:
      throw FragmentError("condition_depth is defined on L(tc, pi) only; got " + render(e));
  }
}

}  // namespace navq
