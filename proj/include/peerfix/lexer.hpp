#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "peerfix/errors.hpp"

namespace peerfix {

enum class TokenKind {
    Keyword,
    Identifier,
    Literal,
    Operator,
    Punctuation,
    Directive,  // whole preprocessor line, kept opaque
};

struct Token {
    TokenKind kind;
    std::string text;
    int line = 0;

    bool operator==(const Token& o) const { return kind == o.kind && text == o.text; }
};

struct TokenStream {
    std::vector<Token> tokens;
    bool lossy_decode = false;  // set when invalid UTF-8 bytes were replaced
};

inline const std::unordered_set<std::string>& c99_keywords() {
    static const std::unordered_set<std::string> kw = {
        "auto", "break", "case", "char", "const", "continue", "default", "do",
        "double", "else", "enum", "extern", "float", "for", "goto", "if",
        "inline", "int", "long", "register", "restrict", "return", "short",
        "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
        "unsigned", "void", "volatile", "while", "_Bool", "_Complex", "_Imaginary",
    };
    return kw;
}

// Identifiers never rewritten by anonymize(): C99 library names plus the
// macros and types student code leans on. Mirrors data/stdlib_names.txt.
inline const std::unordered_set<std::string>& default_stdlib_names() {
    static const std::unordered_set<std::string> names = {
        // stdio
        "printf", "scanf", "fprintf", "fscanf", "sprintf", "sscanf", "snprintf",
        "vprintf", "vfprintf", "vsprintf", "puts", "putchar", "gets", "fgets",
        "fputs", "fputc", "putc", "getc", "getchar", "fgetc", "ungetc", "fopen",
        "freopen", "fclose", "fread", "fwrite", "fseek", "ftell", "rewind",
        "fflush", "feof", "ferror", "clearerr", "perror", "remove", "rename",
        "tmpfile", "setbuf", "setvbuf",
        // stdlib
        "malloc", "calloc", "realloc", "free", "exit", "abort", "atexit",
        "system", "getenv", "atoi", "atol", "atoll", "atof", "strtol",
        "strtoul", "strtoll", "strtoull", "strtod", "strtof", "rand", "srand",
        "qsort", "bsearch", "abs", "labs", "llabs", "div", "ldiv",
        // string
        "memcpy", "memmove", "memset", "memcmp", "memchr", "strcpy", "strncpy",
        "strcat", "strncat", "strcmp", "strncmp", "strchr", "strrchr", "strstr",
        "strlen", "strtok", "strspn", "strcspn", "strpbrk", "strerror",
        "strcoll", "strxfrm",
        // math
        "sqrt", "pow", "sin", "cos", "tan", "asin", "acos", "atan", "atan2",
        "exp", "exp2", "expm1", "log", "log10", "log2", "log1p", "floor",
        "ceil", "fabs", "fmod", "round", "trunc", "fmin", "fmax", "hypot",
        "cbrt", "sinh", "cosh", "tanh",
        // ctype
        "isalpha", "isdigit", "isalnum", "isspace", "isupper", "islower",
        "toupper", "tolower", "ispunct", "isxdigit", "isprint", "iscntrl",
        "isgraph",
        // assert / common macros, objects, and types
        "assert", "NULL", "EOF", "stdin", "stdout", "stderr", "size_t",
        "ssize_t", "ptrdiff_t", "FILE", "EXIT_SUCCESS", "EXIT_FAILURE",
        "INT_MAX", "INT_MIN", "UINT_MAX", "LONG_MAX", "LONG_MIN", "LLONG_MAX",
        "LLONG_MIN", "DBL_MAX", "DBL_MIN", "FLT_MAX", "FLT_MIN", "CHAR_MAX",
        "CHAR_MIN", "RAND_MAX", "M_PI", "INFINITY", "NAN", "bool", "true",
        "false", "int8_t", "int16_t", "int32_t", "int64_t", "uint8_t",
        "uint16_t", "uint32_t", "uint64_t",
    };
    return names;
}

namespace detail {

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_hex_digit(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// Replaces bytes that cannot belong to a valid UTF-8 sequence with '?'.
inline std::string sanitize_utf8(std::string_view in, bool& lossy) {
    std::string out;
    out.reserve(in.size());
    size_t i = 0;
    while (i < in.size()) {
        unsigned char c = static_cast<unsigned char>(in[i]);
        size_t len = 0;
        if (c < 0x80)
            len = 1;
        else if ((c & 0xE0) == 0xC0)
            len = 2;
        else if ((c & 0xF0) == 0xE0)
            len = 3;
        else if ((c & 0xF8) == 0xF0)
            len = 4;
        if (len == 0) {
            out.push_back('?');
            lossy = true;
            ++i;
            continue;
        }
        bool ok = i + len <= in.size();
        for (size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(in[i + k]) & 0xC0) == 0x80;
        if (!ok) {
            out.push_back('?');
            lossy = true;
            ++i;
            continue;
        }
        out.append(in.substr(i, len));
        i += len;
    }
    return out;
}

// Multi-character operators, longest first for maximal munch.
inline const std::vector<std::string>& multi_char_operators() {
    static const std::vector<std::string> ops = {
        "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==",
        "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=",
    };
    return ops;
}

}  // namespace detail

/// Lexes C99 source into a flat token stream. Comments and whitespace are
/// dropped; each preprocessor line becomes one Directive token. Throws
/// unterminated_comment_error / unterminated_string_error with the line.
inline TokenStream tokenize(std::string_view source) {
    TokenStream ts;
    std::string src = detail::sanitize_utf8(source, ts.lossy_decode);

    size_t i = 0;
    int line = 1;
    bool at_line_start = true;
    const size_t n = src.size();

    auto push = [&](TokenKind k, std::string text) {
        ts.tokens.push_back(Token{k, std::move(text), line});
        at_line_start = false;
    };

    while (i < n) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
            at_line_start = true;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
            ++i;
            continue;
        }
        // comments
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            int start_line = line;
            size_t j = i + 2;
            while (j + 1 < n && !(src[j] == '*' && src[j + 1] == '/')) {
                if (src[j] == '\n') ++line;
                ++j;
            }
            if (j + 1 >= n)
                throw unterminated_comment_error(
                    "unterminated comment starting at line " + std::to_string(start_line),
                    start_line);
            i = j + 2;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        // preprocessor directive: one token to end of logical line
        if (c == '#' && at_line_start) {
            size_t j = i;
            int start_line = line;
            while (j < n) {
                if (src[j] == '\n') {
                    if (j > i && src[j - 1] == '\\') {
                        ++line;
                        ++j;
                        continue;
                    }
                    break;
                }
                ++j;
            }
            std::string text = src.substr(i, j - i);
            while (!text.empty() && (text.back() == '\r' || text.back() == ' ' || text.back() == '\t'))
                text.pop_back();
            ts.tokens.push_back(Token{TokenKind::Directive, std::move(text), start_line});
            i = j;
            at_line_start = false;
            continue;
        }
        // identifier or keyword
        if (detail::is_ident_start(c)) {
            size_t j = i + 1;
            while (j < n && detail::is_ident_char(src[j])) ++j;
            std::string text = src.substr(i, j - i);
            TokenKind kind =
                c99_keywords().count(text) ? TokenKind::Keyword : TokenKind::Identifier;
            push(kind, std::move(text));
            i = j;
            continue;
        }
        // numeric literal (int, float, hex, octal; suffixes folded in)
        if (detail::is_digit(c) || (c == '.' && i + 1 < n && detail::is_digit(src[i + 1]))) {
            size_t j = i;
            if (src[j] == '0' && j + 1 < n && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
                j += 2;
                while (j < n && (detail::is_hex_digit(src[j]) || src[j] == '.')) ++j;
                if (j < n && (src[j] == 'p' || src[j] == 'P')) {
                    ++j;
                    if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
                    while (j < n && detail::is_digit(src[j])) ++j;
                }
            } else {
                while (j < n && (detail::is_digit(src[j]) || src[j] == '.')) ++j;
                if (j < n && (src[j] == 'e' || src[j] == 'E')) {
                    if (j + 1 < n && (detail::is_digit(src[j + 1]) || ((src[j + 1] == '+' || src[j + 1] == '-') && j + 2 < n && detail::is_digit(src[j + 2])))) {
                        ++j;
                        if (src[j] == '+' || src[j] == '-') ++j;
                        while (j < n && detail::is_digit(src[j])) ++j;
                    }
                }
            }
            while (j < n && (src[j] == 'u' || src[j] == 'U' || src[j] == 'l' || src[j] == 'L' ||
                             src[j] == 'f' || src[j] == 'F'))
                ++j;
            push(TokenKind::Literal, src.substr(i, j - i));
            i = j;
            continue;
        }
        // string / char literal
        if (c == '"' || c == '\'') {
            char quote = c;
            int start_line = line;
            size_t j = i + 1;
            bool closed = false;
            while (j < n) {
                if (src[j] == '\\' && j + 1 < n) {
                    j += 2;
                    continue;
                }
                if (src[j] == quote) {
                    closed = true;
                    ++j;
                    break;
                }
                if (src[j] == '\n') break;
                ++j;
            }
            if (!closed)
                throw unterminated_string_error(
                    "unterminated " + std::string(quote == '"' ? "string" : "char") +
                        " literal at line " + std::to_string(start_line),
                    start_line);
            push(TokenKind::Literal, src.substr(i, j - i));
            i = j;
            continue;
        }
        // punctuation
        if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
            c == ';' || c == ',') {
            push(TokenKind::Punctuation, std::string(1, c));
            ++i;
            continue;
        }
        // operators, longest match first
        bool matched = false;
        for (const auto& op : detail::multi_char_operators()) {
            if (src.compare(i, op.size(), op) == 0) {
                push(TokenKind::Operator, op);
                i += op.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::string_view("+-*/%<>=!&|^~?:.").find(c) != std::string_view::npos) {
            push(TokenKind::Operator, std::string(1, c));
            ++i;
            continue;
        }
        // anything else (stray @, $, replacement bytes): keep as punctuation
        push(TokenKind::Punctuation, std::string(1, c));
        ++i;
    }
    return ts;
}

/// Renders a token stream back to text: tokens joined by single spaces,
/// directives terminated by a newline so they cannot swallow what follows.
inline std::string render_tokens(const TokenStream& ts) {
    std::string out;
    for (size_t i = 0; i < ts.tokens.size(); ++i) {
        const Token& t = ts.tokens[i];
        out += t.text;
        if (i + 1 < ts.tokens.size())
            out += (t.kind == TokenKind::Directive) ? '\n' : ' ';
    }
    return out;
}

/// Replaces user identifiers with v1, v2, ... in order of first occurrence.
/// Keywords, `main`, and the stdlib allowlist are preserved. Idempotent.
inline TokenStream anonymize(const TokenStream& ts,
                             const std::unordered_set<std::string>& preserved =
                                 default_stdlib_names()) {
    TokenStream out;
    out.lossy_decode = ts.lossy_decode;
    out.tokens.reserve(ts.tokens.size());
    std::unordered_map<std::string, std::string> renames;
    for (const Token& t : ts.tokens) {
        if (t.kind != TokenKind::Identifier || t.text == "main" || preserved.count(t.text)) {
            out.tokens.push_back(t);
            continue;
        }
        auto it = renames.find(t.text);
        if (it == renames.end())
            it = renames.emplace(t.text, "v" + std::to_string(renames.size() + 1)).first;
        out.tokens.push_back(Token{TokenKind::Identifier, it->second, t.line});
    }
    return out;
}

/// Anonymized token texts, the document/query representation used by the
/// lexical ranking.
inline std::vector<std::string> anonymized_terms(std::string_view source) {
    std::vector<std::string> terms;
    TokenStream anon = anonymize(tokenize(source));
    terms.reserve(anon.tokens.size());
    for (const Token& t : anon.tokens) terms.push_back(t.text);
    return terms;
}

}  // namespace peerfix
