#include "recipe.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "ns2d/error.hpp"
#include "run_config.hpp"

namespace ns2d::cli {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::vector<RecipeTerm> parse() {
    std::vector<RecipeTerm> terms;
    skip();
    if (pos_ == s_.size()) fail("empty recipe");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
    terms.push_back(term(sign));
    while (skip(), pos_ < s_.size()) {
      const char op = take();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      terms.push_back(term(op == '-' ? -1.0 : 1.0));
    }
    return terms;
  }

 private:
  RecipeTerm term(double sign) {
    skip();
    RecipeTerm t;
    t.coefficient = sign;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
      t.coefficient *= number();
      skip();
      if (take() != '*') fail("expected '*' after coefficient");
      skip();
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name.empty()) fail("expected a profile name");
    if (name == "phi") {
      skip();
      if (take() != '(') fail("expected '(' after phi");
      const int a = integer();
      skip();
      if (take() != ',') fail("expected ',' in phi(a,b)");
      const int b = integer();
      skip();
      if (take() != ')') fail("expected ')' closing phi(a,b)");
      try {
        t.shape = HermiteIndex(a, b);
      } catch (const PreconditionError& e) {
        fail(e.what());
      }
    } else if (const auto p = parse_profile(name)) {
      t.shape = *p;
    } else {
      fail("unknown profile '" + std::string(name) + "'");
    }
    return t;
  }

  double number() {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
    if (ec != std::errc() || !std::isfinite(x)) fail("invalid coefficient");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return x;
  }

  int integer() {
    skip();
    int x = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return x;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return s_[pos_]; }
  char take() {
    if (pos_ >= s_.size()) fail("unexpected end of recipe");
    return s_[pos_++];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("recipe '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<RecipeTerm> parse_recipe(std::string_view text) { return Parser(text).parse(); }

RealField evaluate_recipe(const Grid& grid, const std::vector<RecipeTerm>& terms) {
  RealField w(grid);
  for (const auto& t : terms) {
    if (const auto* p = std::get_if<Profile>(&t.shape)) {
      w.add_scaled(t.coefficient, sample_profile(grid, *p));
    } else {
      w.add_scaled(t.coefficient, hermite_function(grid, std::get<HermiteIndex>(t.shape)));
    }
  }
  return w;
}

}  // namespace ns2d::cli
