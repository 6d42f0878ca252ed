// Copyright 2026 The qtruncate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qtruncate {

// Parser for exact numeric literals as they appear in configs and on the
// command line: plain numbers plus "pi", "sqrt(...)", + - * / and parentheses,
// e.g. "pi/2", "(3-sqrt(3))/6", "0.305". Evaluated once in double precision.

namespace detail {

class ExprParser {
  public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    double parse() {
        double v = expression();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing characters");
        }
        return v;
    }

  private:
    double expression() {
        double v = term();
        for (;;) {
            skip_ws();
            if (consume('+')) {
                v += term();
            } else if (consume('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                v *= factor();
            } else if (consume('/')) {
                double rhs = factor();
                if (rhs == 0.0) {
                    fail("division by zero");
                }
                v /= rhs;
            } else {
                return v;
            }
        }
    }

    double factor() {
        skip_ws();
        if (consume('-')) {
            return -factor();
        }
        if (consume('+')) {
            return factor();
        }
        if (consume('(')) {
            double v = expression();
            expect(')');
            return v;
        }
        if (match_word("pi")) {
            return std::numbers::pi;
        }
        if (match_word("sqrt")) {
            skip_ws();
            expect('(');
            double v = expression();
            expect(')');
            if (v < 0.0) {
                fail("sqrt of a negative value");
            }
            return std::sqrt(v);
        }
        return number();
    }

    double number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        errno = 0;
        double v = std::strtod(begin, &end);
        if (end == begin) {
            fail("expected a number");
        }
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!consume(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    bool match_word(std::string_view word) {
        if (text_.substr(pos_, word.size()) != word) {
            return false;
        }
        const std::size_t after = pos_ + word.size();
        if (after < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_')) {
            return false;
        }
        pos_ = after;
        return true;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("bad numeric literal \"" + std::string(text_) + "\" at offset " +
                                    std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline double parse_exact(std::string_view text) { return detail::ExprParser(text).parse(); }

/// 12 significant digits, the reporting precision of every emitted number.
inline std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Round to the value that 12-significant-digit output represents.
inline double round_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace qtruncate
