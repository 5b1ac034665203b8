#include "tautres/expr_parser.hpp"

#include <cctype>

namespace tautres {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& prefixes) : s_(s), prefixes_(prefixes) {}

  ExprPtr parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  const std::string& s_;
  const std::vector<std::string>& prefixes_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static ExprPtr node(ExprNode::Kind k, std::vector<ExprPtr> kids) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->kids = std::move(kids);
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs;
    if (eat('-'))
      lhs = node(ExprNode::Kind::Neg, {term()});
    else
      lhs = term();
    while (true) {
      if (eat('+'))
        lhs = node(ExprNode::Kind::Add, {lhs, term()});
      else if (eat('-'))
        lhs = node(ExprNode::Kind::Sub, {lhs, term()});
      else
        return lhs;
    }
  }

  ExprPtr term() {
    auto lhs = factor();
    while (eat('*')) lhs = node(ExprNode::Kind::Mul, {lhs, factor()});
    return lhs;
  }

  ExprPtr factor() {
    auto base = atom();
    while (eat('^')) {
      skip();
      const std::size_t start = pos_;
      unsigned long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
        if (e > 10000) throw ParseError("exponent too large", start);
        ++pos_;
      }
      if (pos_ == start) throw ParseError("expected exponent", start);
      if (e == 0) throw ParseError("exponent must be positive", start);
      auto n = node(ExprNode::Kind::Pow, {base});
      std::const_pointer_cast<ExprNode>(n)->exponent = static_cast<unsigned>(e);
      base = n;
    }
    return base;
  }

  ExprPtr atom() {
    skip();
    if (pos_ == s_.size()) throw ParseError("expected operand", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) throw ParseError("expected denominator", pos_);
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Number;
      try {
        n->value = parse_rational(s_.substr(start, pos_ - start));
      } catch (const std::invalid_argument&) {
        throw ParseError("bad rational", start);
      }
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string prefix = s_.substr(start, pos_ - start);
      bool known = false;
      for (const auto& p : prefixes_) known = known || p == prefix;
      if (!known) throw ParseError("unknown symbol '" + prefix + "'", start);
      const std::size_t ds = pos_;
      int idx = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        idx = idx * 10 + (s_[pos_] - '0');
        if (idx > 100000) throw ParseError("symbol index too large", ds);
        ++pos_;
      }
      if (ds == pos_) throw ParseError("expected index after '" + prefix + "'", pos_);
      if (idx < 1) throw ParseError("symbol index must be >= 1", ds);
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Symbol;
      n->prefix = std::move(prefix);
      n->index = idx;
      return n;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& source, const std::vector<std::string>& prefixes) {
  return Parser(source, prefixes).parse();
}

MultiPoly evaluate_expression(const ExprNode& n,
                              const std::function<MultiPoly(const std::string&, int)>& symbol) {
  switch (n.kind) {
    case ExprNode::Kind::Number: return MultiPoly(n.value);
    case ExprNode::Kind::Symbol: return symbol(n.prefix, n.index);
    case ExprNode::Kind::Add: return evaluate_expression(*n.kids[0], symbol) + evaluate_expression(*n.kids[1], symbol);
    case ExprNode::Kind::Sub: return evaluate_expression(*n.kids[0], symbol) - evaluate_expression(*n.kids[1], symbol);
    case ExprNode::Kind::Mul: return evaluate_expression(*n.kids[0], symbol) * evaluate_expression(*n.kids[1], symbol);
    case ExprNode::Kind::Pow: return evaluate_expression(*n.kids[0], symbol).pow(n.exponent);
    case ExprNode::Kind::Neg: return -evaluate_expression(*n.kids[0], symbol);
  }
  return {};
}

void collect_symbols(const ExprNode& n, std::vector<std::pair<std::string, int>>& out) {
  if (n.kind == ExprNode::Kind::Symbol) out.emplace_back(n.prefix, n.index);
  for (const auto& k : n.kids) collect_symbols(*k, out);
}

}  // namespace tautres
