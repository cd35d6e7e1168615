// Copyright 2026 The hhl-lab Authors
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

#include "hhl/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include "hhl/error.hpp"

namespace hhl {

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ',' || c == '=' || c == ':') {
            out.push_back({std::string(1, c), line});
            ++i;
        } else {
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',' &&
                   text[i] != '=' && text[i] != ':' && text[i] != '#') {
                ++i;
            }
            out.push_back({std::string(text.substr(start, i - start)), line});
        }
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string &what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool is_keyword(const std::string &s) { return s == "n" || s == "matrix" || s == "b"; }

std::optional<double> parse_plain(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

double parse_real(const Token &tok) {
    std::string_view s = tok.text;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (auto v = parse_plain(s)) {
            return *v;
        }
        fail(tok.line, "expected a number, got '" + tok.text + "'");
    }
    auto num = parse_plain(s.substr(0, slash));
    auto den = parse_plain(s.substr(slash + 1));
    if (!num || !den || *den == 0.0) {
        fail(tok.line, "malformed rational '" + tok.text + "'");
    }
    return *num / *den;
}

}  // namespace

ProblemInstance parse_problem(std::string_view text) {
    auto tokens = tokenize(text);
    std::optional<int> n;
    std::optional<std::vector<Complex>> matrix_entries, rhs_entries;
    int matrix_line = 0, rhs_line = 0;

    std::size_t pos = 0;
    while (pos < tokens.size()) {
        const Token &key = tokens[pos];
        if (!is_keyword(key.text)) {
            fail(key.line, "expected one of 'n', 'matrix', 'b', got '" + key.text + "'");
        }
        ++pos;
        if (pos < tokens.size() && (tokens[pos].text == "=" || tokens[pos].text == ":")) {
            ++pos;
        }
        if (key.text == "n") {
            if (n) {
                fail(key.line, "duplicate field 'n'");
            }
            if (pos >= tokens.size()) {
                fail(key.line, "missing value for 'n'");
            }
            const Token &val = tokens[pos++];
            int parsed = 0;
            auto [ptr, ec] = std::from_chars(val.text.data(), val.text.data() + val.text.size(), parsed);
            if (ec != std::errc() || ptr != val.text.data() + val.text.size() || parsed < 1 || parsed > 20) {
                fail(val.line, "'n' must be an integer in [1, 20], got '" + val.text + "'");
            }
            n = parsed;
            continue;
        }
        auto &slot = key.text == "matrix" ? matrix_entries : rhs_entries;
        if (slot) {
            fail(key.line, "duplicate field '" + key.text + "'");
        }
        (key.text == "matrix" ? matrix_line : rhs_line) = key.line;
        std::vector<Complex> entries;
        while (pos < tokens.size() && !is_keyword(tokens[pos].text)) {
            double re = parse_real(tokens[pos++]);
            if (pos >= tokens.size() || tokens[pos].text != ",") {
                fail(tokens[pos - 1].line, "complex entries are written 're,im'");
            }
            ++pos;
            if (pos >= tokens.size()) {
                fail(tokens[pos - 1].line, "missing imaginary part");
            }
            double im = parse_real(tokens[pos++]);
            entries.emplace_back(re, im);
        }
        slot = std::move(entries);
    }

    if (!n) {
        throw Error(ErrorCode::ParseError, "missing field 'n'");
    }
    if (!matrix_entries) {
        throw Error(ErrorCode::ParseError, "missing field 'matrix'");
    }
    if (!rhs_entries) {
        throw Error(ErrorCode::ParseError, "missing field 'b'");
    }
    const std::size_t dim = std::size_t{1} << *n;
    if (matrix_entries->size() != dim * dim) {
        fail(matrix_line, "'matrix' needs " + std::to_string(dim * dim) + " entries, found " +
                              std::to_string(matrix_entries->size()));
    }
    if (rhs_entries->size() != dim) {
        fail(rhs_line, "'b' needs " + std::to_string(dim) + " entries, found " + std::to_string(rhs_entries->size()));
    }

    ProblemInstance out;
    out.n = *n;
    const auto d = static_cast<Eigen::Index>(dim);
    out.matrix.resize(d, d);
    out.rhs.resize(d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            out.matrix(r, c) = (*matrix_entries)[static_cast<std::size_t>(r * d + c)];
        }
        out.rhs(r) = (*rhs_entries)[static_cast<std::size_t>(r)];
    }
    return out;
}

ProblemInstance load_problem(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open problem file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_problem(buf.str());
    } catch (const Error &e) {
        if (e.code() == ErrorCode::ParseError) {
            throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
        }
        throw;
    }
}

std::string format_problem(const ProblemInstance &problem) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "n = " << problem.n << "\n";
    out << "matrix =\n";
    for (Eigen::Index r = 0; r < problem.matrix.rows(); ++r) {
        out << " ";
        for (Eigen::Index c = 0; c < problem.matrix.cols(); ++c) {
            out << " " << problem.matrix(r, c).real() << "," << problem.matrix(r, c).imag();
        }
        out << "\n";
    }
    out << "b =";
    for (Eigen::Index i = 0; i < problem.rhs.size(); ++i) {
        out << " " << problem.rhs(i).real() << "," << problem.rhs(i).imag();
    }
    out << "\n";
    return out.str();
}

}  // namespace hhl
