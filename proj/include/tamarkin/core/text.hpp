#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/rat.hpp"

namespace tamarkin::text {

struct Token {
    std::string text;
    int column = 1;  // 1-based
};

struct Line {
    int number = 0;  // 1-based
    std::vector<Token> tokens;
};

/// Splits a document into whitespace-separated tokens per line. Blank lines and
/// lines starting with '#' are dropped.
inline std::vector<Line> tokenize(std::string_view doc) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= doc.size()) {
        std::size_t eol = doc.find('\n', pos);
        if (eol == std::string_view::npos) eol = doc.size();
        std::string_view raw = doc.substr(pos, eol - pos);
        ++number;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            if (i >= raw.size()) break;
            std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
            line.tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty() && line.tokens[0].text[0] != '#') lines.push_back(std::move(line));
        if (eol == doc.size()) break;
        pos = eol + 1;
    }
    return lines;
}

/// Cursor over the tokenized lines of one document, producing positioned errors.
class Reader {
public:
    Reader(std::string source, std::string_view doc) : source_(std::move(source)), lines_(tokenize(doc)) {}

    bool done() const { return index_ >= lines_.size(); }
    const Line& peek() const { return lines_.at(index_); }
    const Line& next() { return lines_.at(index_++); }
    int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

    [[noreturn]] void fail(const Line& line, const Token& token, const std::string& msg) const {
        throw ParseError(source_, line.number, token.column, msg);
    }
    [[noreturn]] void fail(int line, int column, const std::string& msg) const {
        throw ParseError(source_, line, column, msg);
    }

    void expect_header(std::string_view kind) {
        if (done()) fail(1, 1, "empty document, expected header '" + std::string(kind) + " v1'");
        const Line& l = next();
        if (l.tokens.size() != 2 || l.tokens[0].text != kind) fail(l, l.tokens[0], "expected header '" + std::string(kind) + " v1'");
        if (l.tokens[1].text != "v1") fail(l, l.tokens[1], "unsupported version '" + l.tokens[1].text + "'");
    }

    Rat rat(const Line& line, const Token& token, std::string_view text) const {
        auto r = Rat::parse(text);
        if (!r) fail(line, token, "malformed rational '" + std::string(text) + "'");
        return *r;
    }
    Rat rat(const Line& line, const Token& token) const { return rat(line, token, token.text); }

    long integer(const Line& line, const Token& token, std::string_view text) const {
        try {
            std::size_t used = 0;
            long v = std::stol(std::string(text), &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            fail(line, token, "malformed integer '" + std::string(text) + "'");
        }
    }

    /// Value of a `key=value` token; fails when the key differs.
    std::string_view value_of(const Line& line, const Token& token, std::string_view key) const {
        std::string_view t = token.text;
        if (t.size() <= key.size() || t.substr(0, key.size()) != key || t[key.size()] != '=')
            fail(line, token, "expected '" + std::string(key) + "=...', got '" + token.text + "'");
        return t.substr(key.size() + 1);
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::vector<Line> lines_;
    std::size_t index_ = 0;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Kind::input, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Error::Kind::input, "cannot write '" + path + "'");
    out << content;
}

}  // namespace tamarkin::text
