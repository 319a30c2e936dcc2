#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "peerfix/lexer.hpp"

namespace peerfix {

// Concrete-ish syntax tree. Every consumed token appears as exactly one
// leaf, so the tree spans the whole translation unit; recovery wraps
// unparseable runs in Error nodes instead of failing.
struct AstNode {
    std::string kind;  // production name, or token-kind name for leaves
    std::vector<AstNode> children;
    std::string leaf_text;  // terminals only
    bool is_leaf = false;

    bool is_error() const { return kind == "Error"; }
};

struct Ast {
    AstNode root;
};

inline const char* token_kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Identifier: return "Identifier";
        case TokenKind::Literal: return "Literal";
        case TokenKind::Operator: return "Operator";
        case TokenKind::Punctuation: return "Punctuation";
        case TokenKind::Directive: return "Directive";
    }
    return "Unknown";
}

inline AstNode make_leaf(const Token& t) {
    AstNode n;
    n.kind = token_kind_name(t.kind);
    n.leaf_text = t.text;
    n.is_leaf = true;
    return n;
}

template <typename Fn>
void for_each_node(const AstNode& n, Fn&& fn) {
    fn(n);
    for (const AstNode& c : n.children) for_each_node(c, fn);
}

inline size_t internal_node_count(const AstNode& n) {
    size_t count = 0;
    for_each_node(n, [&](const AstNode& m) {
        if (!m.is_leaf && !m.children.empty()) ++count;
    });
    return count;
}

/// Identifier named by a declarator, empty for abstract declarators.
inline std::string declarator_name(const AstNode& declarator) {
    if (declarator.is_leaf)
        return declarator.kind == "Identifier" ? declarator.leaf_text : std::string();
    for (const AstNode& c : declarator.children) {
        if (c.kind == "Pointer" || (c.is_leaf && c.kind != "Identifier")) continue;
        std::string name = declarator_name(c);
        if (!name.empty()) return name;
    }
    return {};
}

namespace detail {

class Parser {
  public:
    explicit Parser(const TokenStream& ts) : toks_(ts.tokens) {}

    AstNode run() {
        AstNode tu;
        tu.kind = "TranslationUnit";
        while (!eof()) {
            size_t before = pos_;
            if (peek_kind() == TokenKind::Directive) {
                tu.children.push_back(eat());
            } else if (starts_declaration()) {
                tu.children.push_back(external_declaration());
            } else {
                // stray token at file scope (e.g. an extra '}')
                AstNode err = error_node();
                err.children.push_back(eat());
                tu.children.push_back(std::move(err));
            }
            if (pos_ == before) {  // safety net, never expected to trigger
                AstNode err = error_node();
                err.children.push_back(eat());
                tu.children.push_back(std::move(err));
            }
        }
        return tu;
    }

  private:
    const std::vector<Token>& toks_;
    size_t pos_ = 0;
    std::unordered_set<std::string> typedef_names_;

    // ---- cursor -----------------------------------------------------------
    bool eof() const { return pos_ >= toks_.size(); }
    const Token& peek(size_t ahead = 0) const {
        static const Token sentinel{TokenKind::Punctuation, "", 0};
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : sentinel;
    }
    TokenKind peek_kind() const { return peek().kind; }
    bool at(const char* text) const { return !eof() && peek().text == text; }
    bool at_kind(TokenKind k) const { return !eof() && peek().kind == k; }

    AstNode eat() { return make_leaf(toks_[pos_++]); }

    bool accept(const char* text, AstNode& into) {
        if (at(text)) {
            into.children.push_back(eat());
            return true;
        }
        return false;
    }
    // A missing required token becomes an empty Error child; no consumption.
    void expect(const char* text, AstNode& into) {
        if (!accept(text, into)) into.children.push_back(error_node());
    }

    static AstNode error_node() {
        AstNode n;
        n.kind = "Error";
        return n;
    }

    // ---- classification ---------------------------------------------------
    static bool is_type_keyword(const std::string& t) {
        static const std::unordered_set<std::string> kws = {
            "void", "char", "short", "int", "long", "float", "double", "signed",
            "unsigned", "_Bool", "_Complex", "_Imaginary", "struct", "union",
            "enum", "const", "volatile", "restrict", "static", "extern", "auto",
            "register", "typedef", "inline",
        };
        return kws.count(t) > 0;
    }

    bool starts_declaration() const {
        const Token& t = peek();
        if (t.kind == TokenKind::Keyword) return is_type_keyword(t.text);
        if (t.kind == TokenKind::Identifier) return typedef_names_.count(t.text) > 0;
        return false;
    }

    // ---- declarations -----------------------------------------------------
    AstNode external_declaration() {
        bool is_typedef = false;
        AstNode specs = declaration_specifiers(is_typedef);

        AstNode decl;
        decl.kind = "Declaration";
        decl.children.push_back(std::move(specs));
        if (accept(";", decl)) return decl;

        AstNode first = declarator(false);
        if (at("{") && has_function_declarator(first)) {
            AstNode fn;
            fn.kind = "FunctionDefinition";
            fn.children.push_back(std::move(decl.children[0]));
            fn.children.push_back(std::move(first));
            fn.children.push_back(compound_statement());
            return fn;
        }
        finish_init_declarators(decl, std::move(first), is_typedef);
        return decl;
    }

    AstNode declaration() {
        bool is_typedef = false;
        AstNode decl;
        decl.kind = "Declaration";
        decl.children.push_back(declaration_specifiers(is_typedef));
        if (accept(";", decl)) return decl;
        finish_init_declarators(decl, declarator(false), is_typedef);
        return decl;
    }

    void finish_init_declarators(AstNode& decl, AstNode first, bool is_typedef) {
        while (true) {
            if (is_typedef) {
                std::string name = declarator_name(first);
                if (!name.empty()) typedef_names_.insert(name);
            }
            AstNode init_decl;
            init_decl.kind = "InitDeclarator";
            init_decl.children.push_back(std::move(first));
            if (at("=")) {
                init_decl.children.push_back(eat());
                init_decl.children.push_back(initializer());
            }
            decl.children.push_back(std::move(init_decl));
            if (!at(",")) break;
            decl.children.push_back(eat());
            first = declarator(false);
        }
        expect(";", decl);
    }

    AstNode declaration_specifiers(bool& is_typedef) {
        AstNode specs;
        specs.kind = "DeclarationSpecifiers";
        bool have_type = false;
        while (!eof()) {
            const Token& t = peek();
            if (t.kind == TokenKind::Keyword && is_type_keyword(t.text)) {
                if (t.text == "typedef") is_typedef = true;
                if (t.text == "struct" || t.text == "union") {
                    specs.children.push_back(struct_or_union_specifier());
                    have_type = true;
                } else if (t.text == "enum") {
                    specs.children.push_back(enum_specifier());
                    have_type = true;
                } else {
                    if (t.text != "const" && t.text != "volatile" && t.text != "restrict" &&
                        t.text != "typedef" && t.text != "static" && t.text != "extern" &&
                        t.text != "auto" && t.text != "register" && t.text != "inline")
                        have_type = true;
                    specs.children.push_back(eat());
                }
                continue;
            }
            if (!have_type && t.kind == TokenKind::Identifier && typedef_names_.count(t.text)) {
                specs.children.push_back(eat());
                have_type = true;
                continue;
            }
            break;
        }
        return specs;
    }

    AstNode struct_or_union_specifier() {
        AstNode n;
        n.kind = peek().text == "struct" ? "StructSpecifier" : "UnionSpecifier";
        n.children.push_back(eat());
        if (at_kind(TokenKind::Identifier)) n.children.push_back(eat());
        if (at("{")) {
            n.children.push_back(eat());
            while (!eof() && !at("}")) {
                size_t before = pos_;
                n.children.push_back(struct_declaration());
                if (pos_ == before) {
                    AstNode err = error_node();
                    err.children.push_back(eat());
                    n.children.push_back(std::move(err));
                }
            }
            expect("}", n);
        }
        return n;
    }

    AstNode struct_declaration() {
        bool dummy = false;
        AstNode n;
        n.kind = "StructDeclaration";
        n.children.push_back(declaration_specifiers(dummy));
        if (!at(";")) {
            while (true) {
                AstNode d = declarator(false);
                if (at(":")) {  // bitfield
                    AstNode bf;
                    bf.kind = "BitfieldDeclarator";
                    bf.children.push_back(std::move(d));
                    bf.children.push_back(eat());
                    bf.children.push_back(conditional_expression());
                    d = std::move(bf);
                }
                n.children.push_back(std::move(d));
                if (!at(",")) break;
                n.children.push_back(eat());
            }
        }
        expect(";", n);
        return n;
    }

    AstNode enum_specifier() {
        AstNode n;
        n.kind = "EnumSpecifier";
        n.children.push_back(eat());
        if (at_kind(TokenKind::Identifier)) n.children.push_back(eat());
        if (at("{")) {
            n.children.push_back(eat());
            while (!eof() && !at("}")) {
                AstNode e;
                e.kind = "Enumerator";
                if (at_kind(TokenKind::Identifier))
                    e.children.push_back(eat());
                else {
                    AstNode err = error_node();
                    err.children.push_back(eat());
                    e.children.push_back(std::move(err));
                }
                if (at("=")) {
                    e.children.push_back(eat());
                    e.children.push_back(conditional_expression());
                }
                n.children.push_back(std::move(e));
                if (at(","))
                    n.children.push_back(eat());
                else
                    break;
            }
            expect("}", n);
        }
        return n;
    }

    static bool has_function_declarator(const AstNode& d) {
        if (d.kind == "FunctionDeclarator") return true;
        for (const AstNode& c : d.children)
            if (!c.is_leaf && has_function_declarator(c)) return true;
        return false;
    }

    AstNode declarator(bool allow_abstract) {
        AstNode n;
        n.kind = "Declarator";
        if (at("*")) n.children.push_back(pointer());
        n.children.push_back(direct_declarator(allow_abstract));
        if (n.children.size() == 1) return std::move(n.children[0]);
        return n;
    }

    AstNode pointer() {
        AstNode n;
        n.kind = "Pointer";
        while (at("*")) {
            n.children.push_back(eat());
            while (at("const") || at("volatile") || at("restrict")) n.children.push_back(eat());
        }
        return n;
    }

    AstNode direct_declarator(bool allow_abstract) {
        AstNode base;
        if (at_kind(TokenKind::Identifier)) {
            base = eat();
        } else if (at("(") && !allow_abstract) {
            AstNode group;
            group.kind = "ParenDeclarator";
            group.children.push_back(eat());
            group.children.push_back(declarator(false));
            expect(")", group);
            base = std::move(group);
        } else if (at("(") && allow_abstract && looks_like_nested_abstract()) {
            AstNode group;
            group.kind = "ParenDeclarator";
            group.children.push_back(eat());
            group.children.push_back(declarator(true));
            expect(")", group);
            base = std::move(group);
        } else {
            base.kind = "AbstractDeclarator";  // no identifier
        }
        while (!eof()) {
            if (at("[")) {
                AstNode arr;
                arr.kind = "ArrayDeclarator";
                arr.children.push_back(std::move(base));
                arr.children.push_back(eat());
                if (!at("]")) arr.children.push_back(assignment_expression());
                expect("]", arr);
                base = std::move(arr);
            } else if (at("(")) {
                AstNode fn;
                fn.kind = "FunctionDeclarator";
                fn.children.push_back(std::move(base));
                fn.children.push_back(eat());
                if (!at(")")) fn.children.push_back(parameter_list());
                expect(")", fn);
                base = std::move(fn);
            } else {
                break;
            }
        }
        return base;
    }

    // '(' in an abstract declarator is a nested declarator only if it is not
    // a parameter list, i.e. it is followed by '*', '(' or '['.
    bool looks_like_nested_abstract() const {
        const Token& t = peek(1);
        return t.text == "*" || t.text == "(" || t.text == "[";
    }

    AstNode parameter_list() {
        AstNode n;
        n.kind = "ParameterList";
        while (!eof() && !at(")")) {
            size_t before = pos_;
            if (at("...")) {
                n.children.push_back(eat());
            } else if (starts_declaration()) {
                AstNode p;
                p.kind = "ParameterDeclaration";
                bool dummy = false;
                p.children.push_back(declaration_specifiers(dummy));
                if (!at(",") && !at(")")) p.children.push_back(declarator(true));
                n.children.push_back(std::move(p));
            } else if (at_kind(TokenKind::Identifier)) {  // K&R identifier list
                AstNode p;
                p.kind = "ParameterDeclaration";
                p.children.push_back(eat());
                n.children.push_back(std::move(p));
            } else {
                AstNode err = error_node();
                err.children.push_back(eat());
                n.children.push_back(std::move(err));
            }
            if (at(","))
                n.children.push_back(eat());
            else if (pos_ == before)
                break;
        }
        return n;
    }

    AstNode initializer() {
        if (!at("{")) return assignment_expression();
        AstNode n;
        n.kind = "InitializerList";
        n.children.push_back(eat());
        while (!eof() && !at("}")) {
            size_t before = pos_;
            n.children.push_back(initializer());
            if (at(",")) n.children.push_back(eat());
            if (pos_ == before) {
                AstNode err = error_node();
                err.children.push_back(eat());
                n.children.push_back(std::move(err));
            }
        }
        expect("}", n);
        return n;
    }

    AstNode type_name() {
        AstNode n;
        n.kind = "TypeName";
        bool dummy = false;
        n.children.push_back(declaration_specifiers(dummy));
        if (at("*") || at("(") || at("[")) n.children.push_back(declarator(true));
        return n;
    }

    // ---- statements -------------------------------------------------------
    AstNode compound_statement() {
        AstNode n;
        n.kind = "CompoundStatement";
        expect("{", n);
        while (!eof() && !at("}")) {
            size_t before = pos_;
            if (peek_kind() == TokenKind::Directive)
                n.children.push_back(eat());
            else if (starts_declaration())
                n.children.push_back(declaration());
            else
                n.children.push_back(statement());
            if (pos_ == before) {
                AstNode err = error_node();
                err.children.push_back(eat());
                n.children.push_back(std::move(err));
            }
        }
        expect("}", n);
        return n;
    }

    AstNode statement() {
        if (at("{")) return compound_statement();
        if (at("if")) return if_statement();
        if (at("while")) return while_statement();
        if (at("do")) return do_statement();
        if (at("for")) return for_statement();
        if (at("switch")) return switch_statement();
        if (at("return")) {
            AstNode n;
            n.kind = "ReturnStatement";
            n.children.push_back(eat());
            if (!at(";")) n.children.push_back(expression());
            expect(";", n);
            return n;
        }
        if (at("break") || at("continue")) {
            AstNode n;
            n.kind = at("break") ? "BreakStatement" : "ContinueStatement";
            n.children.push_back(eat());
            expect(";", n);
            return n;
        }
        if (at("goto")) {
            AstNode n;
            n.kind = "GotoStatement";
            n.children.push_back(eat());
            if (at_kind(TokenKind::Identifier)) n.children.push_back(eat());
            expect(";", n);
            return n;
        }
        if (at("case")) {
            AstNode n;
            n.kind = "CaseLabel";
            n.children.push_back(eat());
            n.children.push_back(conditional_expression());
            expect(":", n);
            n.children.push_back(statement());
            return n;
        }
        if (at("default")) {
            AstNode n;
            n.kind = "DefaultLabel";
            n.children.push_back(eat());
            expect(":", n);
            n.children.push_back(statement());
            return n;
        }
        if (at(";")) {
            AstNode n;
            n.kind = "EmptyStatement";
            n.children.push_back(eat());
            return n;
        }
        if (at_kind(TokenKind::Identifier) && peek(1).text == ":") {
            AstNode n;
            n.kind = "LabeledStatement";
            n.children.push_back(eat());
            n.children.push_back(eat());
            n.children.push_back(statement());
            return n;
        }
        // expression statement, with panic-mode recovery
        if (at_kind(TokenKind::Identifier) || at_kind(TokenKind::Literal) ||
            at("(") || at("*") || at("&") || at("+") || at("-") || at("!") ||
            at("~") || at("++") || at("--") || at("sizeof")) {
            AstNode n;
            n.kind = "ExpressionStatement";
            n.children.push_back(expression());
            expect(";", n);
            return n;
        }
        AstNode err = error_node();
        while (!eof() && !at(";") && !at("}")) err.children.push_back(eat());
        if (at(";")) err.children.push_back(eat());
        return err;
    }

    AstNode if_statement() {
        AstNode n;
        n.kind = "IfStatement";
        n.children.push_back(eat());
        expect("(", n);
        n.children.push_back(expression());
        expect(")", n);
        n.children.push_back(statement());
        if (at("else")) {
            n.children.push_back(eat());
            n.children.push_back(statement());
        }
        return n;
    }

    AstNode while_statement() {
        AstNode n;
        n.kind = "WhileStatement";
        n.children.push_back(eat());
        expect("(", n);
        n.children.push_back(expression());
        expect(")", n);
        n.children.push_back(statement());
        return n;
    }

    AstNode do_statement() {
        AstNode n;
        n.kind = "DoStatement";
        n.children.push_back(eat());
        n.children.push_back(statement());
        expect("while", n);
        expect("(", n);
        n.children.push_back(expression());
        expect(")", n);
        expect(";", n);
        return n;
    }

    AstNode for_statement() {
        AstNode n;
        n.kind = "ForStatement";
        n.children.push_back(eat());
        expect("(", n);
        AstNode init;
        init.kind = "ForInit";
        if (starts_declaration()) {
            init.children.push_back(declaration());  // consumes ';'
        } else {
            if (!at(";")) init.children.push_back(expression());
            expect(";", init);
        }
        n.children.push_back(std::move(init));
        AstNode cond;
        cond.kind = "ForCondition";
        if (!at(";")) cond.children.push_back(expression());
        expect(";", cond);
        n.children.push_back(std::move(cond));
        AstNode update;
        update.kind = "ForUpdate";
        if (!at(")")) update.children.push_back(expression());
        n.children.push_back(std::move(update));
        expect(")", n);
        n.children.push_back(statement());
        return n;
    }

    AstNode switch_statement() {
        AstNode n;
        n.kind = "SwitchStatement";
        n.children.push_back(eat());
        expect("(", n);
        n.children.push_back(expression());
        expect(")", n);
        n.children.push_back(statement());
        return n;
    }

    // ---- expressions ------------------------------------------------------
    AstNode expression() {
        AstNode e = assignment_expression();
        while (at(",")) {
            AstNode n;
            n.kind = "CommaExpression";
            n.children.push_back(std::move(e));
            n.children.push_back(eat());
            n.children.push_back(assignment_expression());
            e = std::move(n);
        }
        return e;
    }

    static bool is_assignment_op(const std::string& t) {
        return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" ||
               t == "%=" || t == "<<=" || t == ">>=" || t == "&=" || t == "^=" ||
               t == "|=";
    }

    AstNode assignment_expression() {
        AstNode lhs = conditional_expression();
        if (!eof() && peek_kind() == TokenKind::Operator && is_assignment_op(peek().text)) {
            AstNode n;
            n.kind = "AssignmentExpression";
            n.children.push_back(std::move(lhs));
            n.children.push_back(eat());
            n.children.push_back(assignment_expression());
            return n;
        }
        return lhs;
    }

    AstNode conditional_expression() {
        AstNode c = binary_expression(1);
        if (at("?")) {
            AstNode n;
            n.kind = "ConditionalExpression";
            n.children.push_back(std::move(c));
            n.children.push_back(eat());
            n.children.push_back(expression());
            expect(":", n);
            n.children.push_back(conditional_expression());
            return n;
        }
        return c;
    }

    static int binary_precedence(const std::string& t) {
        if (t == "||") return 1;
        if (t == "&&") return 2;
        if (t == "|") return 3;
        if (t == "^") return 4;
        if (t == "&") return 5;
        if (t == "==" || t == "!=") return 6;
        if (t == "<" || t == ">" || t == "<=" || t == ">=") return 7;
        if (t == "<<" || t == ">>") return 8;
        if (t == "+" || t == "-") return 9;
        if (t == "*" || t == "/" || t == "%") return 10;
        return 0;
    }

    AstNode binary_expression(int min_prec) {
        AstNode lhs = cast_expression();
        while (!eof() && peek_kind() == TokenKind::Operator) {
            int prec = binary_precedence(peek().text);
            if (prec < min_prec) break;
            AstNode n;
            n.kind = "BinaryExpression";
            n.children.push_back(std::move(lhs));
            n.children.push_back(eat());
            n.children.push_back(binary_expression(prec + 1));
            lhs = std::move(n);
        }
        return lhs;
    }

    AstNode cast_expression() {
        if (at("(") && peek(1).kind == TokenKind::Keyword && is_type_keyword(peek(1).text)) {
            AstNode n;
            n.kind = "CastExpression";
            n.children.push_back(eat());
            n.children.push_back(type_name());
            expect(")", n);
            n.children.push_back(cast_expression());
            return n;
        }
        if (at("(") && peek(1).kind == TokenKind::Identifier &&
            typedef_names_.count(peek(1).text) &&
            (peek(2).text == ")" || peek(2).text == "*")) {
            AstNode n;
            n.kind = "CastExpression";
            n.children.push_back(eat());
            n.children.push_back(type_name());
            expect(")", n);
            n.children.push_back(cast_expression());
            return n;
        }
        return unary_expression();
    }

    AstNode unary_expression() {
        if (at("++") || at("--") || at("+") || at("-") || at("!") || at("~") ||
            at("*") || at("&")) {
            AstNode n;
            n.kind = "PrefixExpression";
            n.children.push_back(eat());
            n.children.push_back(cast_expression());
            return n;
        }
        if (at("sizeof")) {
            AstNode n;
            n.kind = "SizeofExpression";
            n.children.push_back(eat());
            if (at("(") && (is_type_keyword(peek(1).text) ||
                            (peek(1).kind == TokenKind::Identifier &&
                             typedef_names_.count(peek(1).text)))) {
                n.children.push_back(eat());
                n.children.push_back(type_name());
                expect(")", n);
            } else {
                n.children.push_back(unary_expression());
            }
            return n;
        }
        return postfix_expression();
    }

    AstNode postfix_expression() {
        AstNode e = primary_expression();
        while (!eof()) {
            if (at("(")) {
                AstNode n;
                n.kind = "CallExpression";
                n.children.push_back(std::move(e));
                n.children.push_back(eat());
                if (!at(")")) {
                    AstNode args;
                    args.kind = "ArgumentList";
                    while (!eof() && !at(")")) {
                        size_t before = pos_;
                        args.children.push_back(assignment_expression());
                        if (at(",")) args.children.push_back(eat());
                        if (pos_ == before) {
                            AstNode err = error_node();
                            err.children.push_back(eat());
                            args.children.push_back(std::move(err));
                        }
                    }
                    n.children.push_back(std::move(args));
                }
                expect(")", n);
                e = std::move(n);
            } else if (at("[")) {
                AstNode n;
                n.kind = "IndexExpression";
                n.children.push_back(std::move(e));
                n.children.push_back(eat());
                n.children.push_back(expression());
                expect("]", n);
                e = std::move(n);
            } else if (at(".") || at("->")) {
                AstNode n;
                n.kind = "MemberExpression";
                n.children.push_back(std::move(e));
                n.children.push_back(eat());
                if (at_kind(TokenKind::Identifier))
                    n.children.push_back(eat());
                else
                    n.children.push_back(error_node());
                e = std::move(n);
            } else if (at("++") || at("--")) {
                AstNode n;
                n.kind = "PostfixExpression";
                n.children.push_back(std::move(e));
                n.children.push_back(eat());
                e = std::move(n);
            } else {
                break;
            }
        }
        return e;
    }

    AstNode primary_expression() {
        if (at_kind(TokenKind::Identifier) || at_kind(TokenKind::Literal) ||
            at_kind(TokenKind::Keyword))
            return eat();
        if (at("(")) {
            AstNode n;
            n.kind = "ParenExpression";
            n.children.push_back(eat());
            n.children.push_back(expression());
            expect(")", n);
            return n;
        }
        AstNode err = error_node();
        if (!eof()) err.children.push_back(eat());
        return err;
    }
};

}  // namespace detail

/// Best-effort C99 parse; buggy student code yields a tree with Error nodes
/// rather than a failure. Deterministic for a given source.
inline Ast parse_ast(const TokenStream& ts) {
    detail::Parser p(ts);
    return Ast{p.run()};
}

inline Ast parse_ast(std::string_view source) { return parse_ast(tokenize(source)); }

}  // namespace peerfix
