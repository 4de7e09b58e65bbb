#pragma once

// Chunk text format, one statement per line:
//
//   unit 1
//   elem a
//   a * b = c
//   a * b = undef
//
// `#` starts a comment. Products not mentioned are undefined. `unit X`
// declares X (if new) and marks it as the unit.

#include "sofic/chunk.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace sofic {

/// Error carrying the offending 1-based line number.
class parse_error : public error {
public:
    parse_error(const std::string& source, std::size_t line, const std::string& what)
        : error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace detail

/// Streaming chunk reader. Lines it does not understand are handed to
/// `extra` (if set) before being rejected, so richer formats can embed chunks.
class ChunkReader {
public:
    explicit ChunkReader(std::string source = "<chunk>") : source_(std::move(source)) {}

    /// Returns false if the line is not a chunk statement.
    bool feed(const std::string& raw, std::size_t lineno) {
        const auto toks = detail::split_ws(detail::strip_comment(raw));
        if (toks.empty()) return true;
        if (toks[0] == "unit" && toks.size() == 2) {
            if (unit_) throw parse_error(source_, lineno, "unit declared twice");
            unit_ = toks[1];
            declare(toks[1], lineno, /*allow_existing=*/true);
            return true;
        }
        if (toks[0] == "elem" && toks.size() == 2) {
            declare(toks[1], lineno, /*allow_existing=*/false);
            return true;
        }
        if (toks.size() == 5 && toks[1] == "*" && toks[3] == "=") {
            products_.push_back({toks[0], toks[2], toks[4], lineno});
            return true;
        }
        return false;
    }

    Chunk finish() const {
        if (!unit_) throw parse_error(source_, last_line_, "no unit declared");
        Chunk c(names_, *unit_);
        std::vector<bool> seen(c.size() * c.size(), false);
        for (const auto& p : products_) {
            auto a = c.find(p.a);
            auto b = c.find(p.b);
            if (!a) throw parse_error(source_, p.line, "unknown element '" + p.a + "'");
            if (!b) throw parse_error(source_, p.line, "unknown element '" + p.b + "'");
            std::optional<Chunk::Index> r;
            if (p.c != "undef") {
                r = c.find(p.c);
                if (!r) throw parse_error(source_, p.line, "unknown element '" + p.c + "'");
            }
            auto s = seen[*a * c.size() + *b];
            if (s) throw parse_error(source_, p.line, "product " + p.a + " * " + p.b + " given twice");
            s = true;
            c.set_product(*a, *b, r);
        }
        return c;
    }

private:
    struct Stmt {
        std::string a, b, c;
        std::size_t line;
    };

    void declare(const std::string& name, std::size_t lineno, bool allow_existing) {
        last_line_ = lineno;
        if (name == "undef") throw parse_error(source_, lineno, "'undef' is reserved");
        for (const auto& n : names_)
            if (n == name) {
                if (allow_existing) return;
                throw parse_error(source_, lineno, "element '" + name + "' declared twice");
            }
        names_.push_back(name);
    }

    std::string source_;
    std::vector<std::string> names_;
    std::optional<std::string> unit_;
    std::vector<Stmt> products_;
    std::size_t last_line_ = 0;
};

inline Chunk parse_chunk(std::istream& in, const std::string& source = "<chunk>") {
    ChunkReader reader(source);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!reader.feed(line, lineno)) throw parse_error(source, lineno, "unrecognized statement '" + line + "'");
    }
    return reader.finish();
}

inline Chunk parse_chunk(const std::string& text) {
    std::istringstream in(text);
    return parse_chunk(in);
}

inline Chunk load_chunk(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    return parse_chunk(in, path);
}

/// Canonical text: declarations in element order, then defined products in
/// row-major order. parse_chunk(print_chunk(c)) == c.
inline std::string print_chunk(const Chunk& c) {
    std::string s;
    for (Chunk::Index i = 0; i < c.size(); ++i)
        s += (i == c.unit() ? "unit " : "elem ") + c.name(i) + "\n";
    for (Chunk::Index a = 0; a < c.size(); ++a)
        for (Chunk::Index b = 0; b < c.size(); ++b)
            if (auto p = c.product(a, b)) s += c.name(a) + " * " + c.name(b) + " = " + c.name(*p) + "\n";
    return s;
}

} // namespace sofic
