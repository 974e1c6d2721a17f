#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsn/diagnostics.hpp"

// A YAML 1.2 subset: block and flow mappings, sequences, and single-line
// scalars (plain, single- and double-quoted). Anchors, aliases, tags, block
// scalars, and multi-document streams are rejected with located errors.
// Small enough to keep every diagnostic pinned to a line and column.

namespace gsn::yaml {

struct Node {
    enum class Type { Scalar, Sequence, Mapping };

    struct Entry {
        std::string key;
        SourceLocation key_loc;
        Node value;
    };

    Type type = Type::Scalar;
    SourceLocation loc;
    std::string scalar;
    std::vector<Node> items;      // Sequence
    std::vector<Entry> entries;   // Mapping, in document order

    bool is_scalar() const { return type == Type::Scalar; }
    bool is_sequence() const { return type == Type::Sequence; }
    bool is_mapping() const { return type == Type::Mapping; }

    const Node* get(std::string_view key) const {
        for (const auto& e : entries)
            if (e.key == key) return &e.value;
        return nullptr;
    }
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, std::string file) : file_(std::move(file)) {
        split_lines(text);
    }

    Node parse_document() {
        skip_blank();
        if (!eof() && content_is(row_, "---")) ++row_;
        skip_blank();
        if (eof()) {
            Node empty;
            empty.type = Node::Type::Mapping;
            empty.loc = at(0, 0);
            return empty;
        }
        Node root = parse_node(indent_of(row_), -1);
        skip_blank();
        if (!eof()) {
            if (content_is(row_, "...")) {
                ++row_;
                skip_blank();
            }
            if (!eof()) {
                if (content_is(row_, "---"))
                    fail(row_, indent_of(row_), "multiple YAML documents are not supported");
                fail(row_, indent_of(row_), "trailing content after the document root");
            }
        }
        return root;
    }

private:
    std::string file_;
    std::vector<std::string> lines_;  // comment-stripped, columns preserved
    std::size_t row_ = 0;

    // -- line bookkeeping --------------------------------------------------

    void split_lines(std::string_view text) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            std::string_view raw = end == std::string_view::npos
                                       ? text.substr(start)
                                       : text.substr(start, end - start);
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            lines_.push_back(strip_comment(raw, lines_.size()));
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
    }

    std::string strip_comment(std::string_view line, std::size_t row) const {
        bool in_double = false, in_single = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (in_double) {
                if (c == '\\') ++i;
                else if (c == '"') in_double = false;
            } else if (in_single) {
                if (c == '\'') {
                    if (i + 1 < line.size() && line[i + 1] == '\'') ++i;
                    else in_single = false;
                }
            } else if (c == '"') {
                in_double = true;
            } else if (c == '\'') {
                in_single = true;
            } else if (c == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
                return std::string(line.substr(0, i));
            }
        }
        (void)row;
        return std::string(line);
    }

    bool eof() const { return row_ >= lines_.size(); }

    const std::string& line(std::size_t row) const { return lines_[row]; }

    bool blank(std::size_t row) const {
        for (char c : line(row))
            if (c != ' ' && c != '\t') return false;
        return true;
    }

    void skip_blank() {
        while (!eof() && blank(row_)) ++row_;
    }

    std::size_t indent_of(std::size_t row) const {
        const std::string& l = line(row);
        std::size_t i = 0;
        while (i < l.size() && l[i] == ' ') ++i;
        if (i < l.size() && l[i] == '\t')
            fail(row, i, "tab character in indentation; use spaces");
        return i;
    }

    bool content_is(std::size_t row, std::string_view text) const {
        std::size_t i = indent_of(row);
        std::string_view rest = std::string_view(line(row)).substr(i);
        while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
        return rest == text;
    }

    SourceLocation at(std::size_t row, std::size_t col) const {
        return {file_, static_cast<int>(row) + 1, static_cast<int>(col) + 1};
    }

    [[noreturn]] void fail(std::size_t row, std::size_t col, const std::string& message) const {
        throw ParseError(message, at(row, col));
    }

    // -- node parsing --------------------------------------------------------

    // Parses the node whose content starts at lines_[row_][col]. parent_indent
    // is the owning construct's indent; nested block lines must exceed it.
    Node parse_node(std::size_t col, int parent_indent) {
        const std::string& l = line(row_);
        char first = l[col];

        if (first == '[' || first == '{') {
            std::size_t pos = col;
            Node node = parse_flow(pos);
            expect_line_end(pos);
            ++row_;
            return node;
        }
        if (first == '"' || first == '\'') {
            std::size_t pos = col;
            Node node = parse_quoted(pos);
            expect_line_end(pos);
            ++row_;
            return node;
        }
        if (first == '-' && (col + 1 >= l.size() || l[col + 1] == ' '))
            return parse_block_sequence(col);

        check_unsupported(row_, col);

        std::size_t sep = find_key_separator(l, col);
        if (sep != std::string::npos) return parse_block_mapping(col);

        Node node;
        node.type = Node::Type::Scalar;
        node.loc = at(row_, col);
        node.scalar = rtrim(l.substr(col));
        (void)parent_indent;
        ++row_;
        return node;
    }

    Node parse_block_mapping(std::size_t indent) {
        Node node;
        node.type = Node::Type::Mapping;
        node.loc = at(row_, indent);

        while (true) {
            const std::string& l = line(row_);
            std::size_t sep = find_key_separator(l, indent);
            if (sep == std::string::npos)
                fail(row_, indent, "expected a \"key:\" mapping entry");
            std::string key = rtrim(l.substr(indent, sep - indent));
            if (key.empty()) fail(row_, indent, "empty mapping key");
            if (node.get(key)) fail(row_, indent, "duplicate key \"" + key + "\"");

            Node::Entry entry;
            entry.key = key;
            entry.key_loc = at(row_, indent);

            std::size_t value_col = sep + 1;
            while (value_col < l.size() && l[value_col] == ' ') ++value_col;
            if (value_col < l.size()) {
                entry.value = parse_node(value_col, static_cast<int>(indent));
            } else {
                ++row_;
                entry.value = parse_nested_or_empty(indent, entry.key_loc);
            }
            node.entries.push_back(std::move(entry));

            skip_blank();
            if (eof()) return node;
            std::size_t next = indent_of(row_);
            if (next < indent) return node;
            if (next > indent) fail(row_, next, "unexpected indentation");
            if (content_is(row_, "---") || content_is(row_, "...")) return node;
            if (line(row_)[next] == '-' &&
                (next + 1 >= line(row_).size() || line(row_)[next + 1] == ' '))
                fail(row_, next, "sequence item at mapping level");
        }
    }

    Node parse_block_sequence(std::size_t indent) {
        Node node;
        node.type = Node::Type::Sequence;
        node.loc = at(row_, indent);

        while (true) {
            const std::string& l = line(row_);
            std::size_t item_col = indent + 1;
            while (item_col < l.size() && l[item_col] == ' ') ++item_col;
            if (item_col < l.size()) {
                node.items.push_back(parse_node(item_col, static_cast<int>(indent)));
            } else {
                SourceLocation dash = at(row_, indent);
                ++row_;
                node.items.push_back(parse_nested_or_empty(indent, dash));
            }

            skip_blank();
            if (eof()) return node;
            std::size_t next = indent_of(row_);
            if (next < indent) return node;
            if (next > indent) fail(row_, next, "unexpected indentation");
            if (content_is(row_, "---") || content_is(row_, "...")) return node;
            const std::string& nl = line(row_);
            if (nl[next] != '-' || (next + 1 < nl.size() && nl[next + 1] != ' '))
                return node;  // sibling of the parent mapping; let the caller decide
        }
    }

    // After "key:" or "-" with nothing on the line: a more-indented block, or
    // an empty scalar.
    Node parse_nested_or_empty(std::size_t indent, const SourceLocation& fallback) {
        skip_blank();
        if (!eof() && !content_is(row_, "---") && !content_is(row_, "...")) {
            std::size_t next = indent_of(row_);
            if (next > indent) return parse_node(next, static_cast<int>(indent));
        }
        Node empty;
        empty.type = Node::Type::Scalar;
        empty.loc = fallback;
        empty.scalar.clear();
        return empty;
    }

    // -- scalars and flow collections ---------------------------------------

    void check_unsupported(std::size_t row, std::size_t col) const {
        switch (line(row)[col]) {
            case '&': fail(row, col, "YAML anchors are not supported");
            case '*': fail(row, col, "YAML aliases are not supported");
            case '!': fail(row, col, "YAML tags are not supported");
            case '|':
            case '>': fail(row, col, "block scalars are not supported");
            case '%': fail(row, col, "YAML directives are not supported");
            case '?': fail(row, col, "explicit mapping keys are not supported");
            case '@':
            case '`': fail(row, col, "reserved character in scalar");
            default: break;
        }
    }

    // First ':' that ends a plain key: followed by space or end of line, and
    // not inside a quoted stretch.
    static std::size_t find_key_separator(const std::string& l, std::size_t from) {
        if (from < l.size() && (l[from] == '"' || l[from] == '\'')) return std::string::npos;
        for (std::size_t i = from; i < l.size(); ++i) {
            if (l[i] == ':' && (i + 1 >= l.size() || l[i + 1] == ' ')) return i;
        }
        return std::string::npos;
    }

    static std::string rtrim(std::string s) {
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        return s;
    }

    void expect_line_end(std::size_t pos) const {
        const std::string& l = line(row_);
        while (pos < l.size() && l[pos] == ' ') ++pos;
        if (pos < l.size()) fail(row_, pos, "unexpected content after value");
    }

    Node parse_quoted(std::size_t& pos) {
        const std::string& l = line(row_);
        char quote = l[pos];
        Node node;
        node.type = Node::Type::Scalar;
        node.loc = at(row_, pos);
        std::size_t i = pos + 1;
        std::string value;
        while (i < l.size()) {
            char c = l[i];
            if (quote == '"' && c == '\\') {
                if (i + 1 >= l.size()) fail(row_, i, "dangling escape");
                char e = l[i + 1];
                switch (e) {
                    case '\\': value += '\\'; break;
                    case '"': value += '"'; break;
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    case '0': value += '\0'; break;
                    default: fail(row_, i, std::string("unsupported escape \"\\") + e + "\"");
                }
                i += 2;
                continue;
            }
            if (c == quote) {
                if (quote == '\'' && i + 1 < l.size() && l[i + 1] == '\'') {
                    value += '\'';
                    i += 2;
                    continue;
                }
                node.scalar = std::move(value);
                pos = i + 1;
                return node;
            }
            value += c;
            ++i;
        }
        fail(row_, pos, "unterminated quoted string");
    }

    Node parse_flow(std::size_t& pos) {
        const std::string& l = line(row_);
        char open = l[pos];
        Node node;
        node.type = open == '[' ? Node::Type::Sequence : Node::Type::Mapping;
        node.loc = at(row_, pos);
        char close = open == '[' ? ']' : '}';
        ++pos;
        skip_spaces(pos);
        if (pos < l.size() && l[pos] == close) {
            ++pos;
            return node;
        }
        while (true) {
            if (pos >= l.size()) fail(row_, l.size(), "unterminated flow collection");
            if (open == '[') {
                node.items.push_back(parse_flow_value(pos));
            } else {
                skip_spaces(pos);
                std::size_t key_start = pos;
                Node key_node = parse_flow_scalar(pos, /*is_key=*/true);
                skip_spaces(pos);
                if (pos >= l.size() || l[pos] != ':')
                    fail(row_, pos, "expected ':' in flow mapping");
                ++pos;
                if (node.get(key_node.scalar))
                    fail(row_, key_start, "duplicate key \"" + key_node.scalar + "\"");
                Node::Entry entry;
                entry.key = key_node.scalar;
                entry.key_loc = at(row_, key_start);
                entry.value = parse_flow_value(pos);
                node.entries.push_back(std::move(entry));
            }
            skip_spaces(pos);
            if (pos >= l.size()) fail(row_, l.size(), "unterminated flow collection");
            if (l[pos] == close) {
                ++pos;
                return node;
            }
            if (l[pos] != ',') fail(row_, pos, "expected ',' in flow collection");
            ++pos;
            skip_spaces(pos);
            if (pos < l.size() && l[pos] == close)
                fail(row_, pos, "trailing comma in flow collection");
        }
    }

    Node parse_flow_value(std::size_t& pos) {
        const std::string& l = line(row_);
        skip_spaces(pos);
        if (pos >= l.size()) fail(row_, l.size(), "missing value in flow collection");
        char c = l[pos];
        if (c == '[' || c == '{') return parse_flow(pos);
        if (c == '"' || c == '\'') return parse_quoted(pos);
        return parse_flow_scalar(pos, /*is_key=*/false);
    }

    Node parse_flow_scalar(std::size_t& pos, bool is_key) {
        const std::string& l = line(row_);
        if (pos < l.size() && (l[pos] == '"' || l[pos] == '\'')) return parse_quoted(pos);
        check_unsupported(row_, pos);
        Node node;
        node.type = Node::Type::Scalar;
        node.loc = at(row_, pos);
        std::size_t start = pos;
        while (pos < l.size()) {
            char c = l[pos];
            if (c == ',' || c == ']' || c == '}') break;
            if (is_key && c == ':' && (pos + 1 >= l.size() || l[pos + 1] == ' ')) break;
            ++pos;
        }
        node.scalar = rtrim(l.substr(start, pos - start));
        if (node.scalar.empty()) fail(row_, start, "empty flow scalar");
        return node;
    }

    void skip_spaces(std::size_t& pos) const {
        const std::string& l = line(row_);
        while (pos < l.size() && l[pos] == ' ') ++pos;
    }
};

}  // namespace detail

/// Parses one YAML-subset document. An empty document yields an empty mapping.
inline Node parse(std::string_view text, const std::string& file = {}) {
    return detail::Parser(text, file).parse_document();
}

}  // namespace gsn::yaml
