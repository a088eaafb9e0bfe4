#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace navq {

enum class Kind : std::uint8_t {
  kEmpty,
  kIdentity,
  kDiversity,
  kLabel,
  kConverse,
  kPlus,
  kProj1,
  kProj2,
  kCoproj1,
  kCoproj2,
  kCompose,
  kUnion,
  kIntersect,
  kDifference,
};

struct Node;

// Immutable navigational expression. Copies share structure.
class Expr {
 public:
  Expr();  // Empty

  Kind kind() const;
  const std::string& label() const;  // only for kLabel
  Expr left() const;  // child of unary, left of binary
  Expr right() const;
  bool is_unary() const;
  bool is_binary() const;
  bool is_atom() const;
  const Node* node() const { return node_.get(); }

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }
  // Structural total order (kind, label, then children).
  bool operator<(const Expr& o) const;

  std::size_t hash() const;

  static Expr empty();
  static Expr identity();
  static Expr diversity();
  static Expr label(std::string name);
  static Expr unary(Kind k, Expr e);
  static Expr binary(Kind k, Expr l, Expr r);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind;
  std::string label;
  std::shared_ptr<const Node> l;
  std::shared_ptr<const Node> r;
  std::size_t hash;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// Constructors.
Expr empty();
Expr id();
Expr di();
Expr lbl(const std::string& name);
Expr conv(Expr e);
Expr plus(Expr e);
Expr star(Expr e);  // id | e+
Expr pi1(Expr e);
Expr pi2(Expr e);
Expr copi1(Expr e);
Expr copi2(Expr e);
Expr compose(Expr l, Expr r);
Expr unite(Expr l, Expr r);
Expr intersect(Expr l, Expr r);
Expr minus(Expr l, Expr r);
Expr power(Expr e, int k);  // e^0 = id, e^k = e.e^(k-1)
Expr all_edges(const std::vector<std::string>& alphabet);  // E
Expr compose_all(const std::vector<Expr>& es);  // left-nested, id when empty
Expr unite_all(const std::vector<Expr>& es);    // left-nested, 0 when empty

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// `E` expands to the union of `alphabet`; using E with an empty alphabet is an error.
Expr parse(const std::string& text, const std::vector<std::string>& alphabet = {});
std::string render(const Expr& e);

int size(const Expr& e);
int ast_depth(const Expr& e);  // atoms 0
std::set<std::string> labels_of(const Expr& e);

enum class Op : std::uint8_t { kDi, kConv, kTc, kPi1, kPi2, kCopi1, kCopi2, kCap, kMinus };
constexpr int kNumOps = 9;

class Fragment {
 public:
  Fragment() = default;
  Fragment(std::initializer_list<Op> ops);
  static Fragment from_bits(std::uint16_t bits) {
    Fragment f;
    f.bits_ = bits;
    return f;
  }

  bool has(Op o) const { return bits_ & bit(o); }
  void add(Op o) { bits_ |= bit(o); }
  void remove(Op o) { bits_ &= static_cast<std::uint16_t>(~bit(o)); }
  bool subset_of(const Fragment& o) const { return (bits_ & ~o.bits_) == 0; }
  bool empty() const { return bits_ == 0; }
  std::uint16_t bits() const { return bits_; }
  Fragment operator|(const Fragment& o) const { return from_bits(bits_ | o.bits_); }
  Fragment operator&(const Fragment& o) const { return from_bits(bits_ & o.bits_); }
  Fragment without(const Fragment& o) const {
    return from_bits(static_cast<std::uint16_t>(bits_ & ~o.bits_));
  }
  bool operator==(const Fragment& o) const { return bits_ == o.bits_; }
  bool operator!=(const Fragment& o) const { return bits_ != o.bits_; }

  // "{conv, minus}" style text; parse accepts names separated by commas/spaces.
  std::string to_string() const;
  static Fragment parse(const std::string& text);

 private:
  static std::uint16_t bit(Op o) { return static_cast<std::uint16_t>(1u << static_cast<int>(o)); }
  std::uint16_t bits_ = 0;
};

const char* op_name(Op o);

Fragment operators_used(const Expr& e);
Fragment base_closure(Fragment f);
Expr simplify_empty(const Expr& e);
// simplify_empty plus id units in compositions, 0* = id and duplicate union operands.
Expr simplify_units(const Expr& e);
bool is_downward(const Expr& e);

class FragmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Defined on L(tc, pi); throws FragmentError otherwise.
int condition_depth(const Expr& e);

}  // namespace navq
