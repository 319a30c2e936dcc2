#pragma once

#include <string>

#include "peerfix/ast.hpp"

namespace peerfix {

struct GrammarProfile {
    bool has_struct = false;
    bool has_pointer = false;
    bool has_multidim_array = false;
    int custom_function_count = 0;  // function definitions other than main
};

namespace detail {

// Good-enough lvalue test for deciding whether unary * / & is a pointer use.
inline bool is_lvalue_expr(const AstNode& n) {
    if (n.is_leaf) return n.kind == "Identifier";
    if (n.kind == "IndexExpression" || n.kind == "MemberExpression") return true;
    if (n.kind == "ParenExpression" && n.children.size() >= 2)
        return is_lvalue_expr(n.children[1]);
    if (n.kind == "PrefixExpression" && n.children.size() == 2 &&
        n.children[0].leaf_text == "*")
        return true;
    return false;
}

}  // namespace detail

inline GrammarProfile detect_components(const Ast& ast) {
    GrammarProfile p;
    for_each_node(ast.root, [&](const AstNode& n) {
        if (n.is_leaf) return;
        if (n.kind == "StructSpecifier") p.has_struct = true;
        if (n.kind == "Pointer") p.has_pointer = true;
        if (n.kind == "PrefixExpression" && n.children.size() == 2 &&
            (n.children[0].leaf_text == "*" || n.children[0].leaf_text == "&") &&
            detail::is_lvalue_expr(n.children[1]))
            p.has_pointer = true;
        if (n.kind == "ArrayDeclarator" && !n.children.empty() &&
            n.children[0].kind == "ArrayDeclarator")
            p.has_multidim_array = true;
        if (n.kind == "FunctionDefinition" && n.children.size() >= 2 &&
            declarator_name(n.children[1]) != "main")
            ++p.custom_function_count;
    });
    return p;
}

}  // namespace peerfix
