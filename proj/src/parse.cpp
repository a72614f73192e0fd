#include "essval/parse.hpp"

#include <cctype>

#include "essval/errors.hpp"

namespace essval {

namespace {

constexpr std::string_view kPiDigits = "3.14159265358979323846264338327950288419716939937510";
constexpr std::string_view kEDigits = "2.71828182845904523536028747135266249775724709369995";

class Parser {
 public:
  Parser(std::string_view text, const std::optional<RealValue>& alpha)
      : text_(text), alpha_(alpha) {}

  ParsedValue run() {
    RealValue v = expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return {std::move(v), approximate_};
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_)
                     + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_primary_start() {
    skip_space();
    if (pos_ >= text_.size()) {
      return false;
    }
    const char ch = text_[pos_];
    return ch == '(' || std::isalpha(static_cast<unsigned char>(ch));
  }

  RealValue expr() {
    RealValue v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  RealValue term() {
    RealValue v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        RealValue rhs = unary();
        if (rhs.is_zero()) {
          fail("division by zero");
        }
        v /= rhs;
      } else if (at_primary_start()) {
        v *= primary();  // implicit product, as in `3a` or `2sqrt(5)`
      } else {
        return v;
      }
    }
  }

  RealValue unary() {
    if (accept('-')) {
      return -unary();
    }
    if (accept('+')) {
      return unary();
    }
    return primary();
  }

  RealValue primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      fail("unexpected end of input");
    }
    if (accept('(')) {
      RealValue v = expr();
      if (!accept(')')) {
        fail("expected ')'");
      }
      return v;
    }
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "sqrt") {
        if (!accept('(')) {
          fail("expected '(' after sqrt");
        }
        RealValue arg = expr();
        if (!accept(')')) {
          fail("expected ')'");
        }
        return square_root(arg);
      }
      if (word == "a") {
        if (!alpha_) {
          pos_ = start;
          fail("symbol 'a' is only available in t expressions");
        }
        return *alpha_;
      }
      if (word == "pi" || word == "e") {
        approximate_ = true;
        return truncated(word == "pi" ? kPiDigits : kEDigits);
      }
      pos_ = start;
      fail("unknown symbol '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  RealValue number() {
    BigInt num = 0;
    BigInt den = 1;
    bool any_digit = false;
    bool fraction = false;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        num = num * 10 + (ch - '0');
        if (fraction) {
          den *= 10;
        }
        any_digit = true;
      } else if (ch == '.' && !fraction) {
        fraction = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!any_digit) {
      fail("malformed number");
    }
    return RealValue::rational(num, den);
  }

  RealValue truncated(std::string_view digits) {
    BigInt num = 0;
    BigInt den = 1;
    bool fraction = false;
    int kept = 0;
    for (char ch : digits) {
      if (ch == '.') {
        fraction = true;
        continue;
      }
      if (fraction && kept == kTruncationDigits) {
        break;
      }
      num = num * 10 + (ch - '0');
      if (fraction) {
        den *= 10;
        ++kept;
      }
    }
    return RealValue::rational(num, den);
  }

  RealValue square_root(const RealValue& arg) {
    if (!arg.is_rational()) {
      fail("sqrt of an irrational value is not a quadratic surd");
    }
    if (arg.sign() < 0) {
      fail("sqrt of a negative value");
    }
    // sqrt(p/q) = sqrt(p*q)/q
    const BigInt radicand = arg.a() * arg.c();
    if (radicand > BigInt(1'000'000'000'000LL)) {
      fail("radicand too large");
    }
    return RealValue::surd(0, 1, radicand.convert_to<std::int64_t>(), arg.c());
  }

  std::string_view text_;
  const std::optional<RealValue>& alpha_;
  std::size_t pos_{0};
  bool approximate_{false};
};

}  // namespace

ParsedValue parse_real(std::string_view text, const std::optional<RealValue>& alpha) {
  try {
    return Parser(text, alpha).run();
  } catch (const IncomparableRepresentations& e) {
    throw ParseError("cannot parse '" + std::string(text) + "': " + e.what());
  }
}

}  // namespace essval
