#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "peerfix/ast.hpp"

namespace peerfix {

// Def-use edge over position-normalized variables.
//
// Extraction rule (hand oracles in the tests follow this exactly):
//  * Variables are renamed v1, v2, ... in the order their first def or use
//    event is generated by a source-order walk; within an initialized
//    declaration the initializer's uses are generated before the new
//    variable's def.
//  * Each variable instance numbers its own sites 1, 2, ... in generation
//    order, defs and uses sharing one counter. Ordinal 0 is the synthetic
//    def paired with uses no real def reaches (undeclared or unassigned).
//  * Def sites: declarations with initializer, assignments, ++/--,
//    scanf-family output arguments, and loop-header updates. Compound
//    assignment and ++/-- generate a use then a def at the same spot.
//    Assignment through an index or member lvalue is a weak def of the base
//    (previous defs survive); assignment through * records only the pointer
//    read. Parameters are not def sites.
//  * A use pairs with every reaching def of its variable. Straight-line code
//    kills on scalar assignment; if/else, switch and loop back edges merge
//    by union (all reaching defs).
struct DataFlowEdge {
    std::string var;
    int def_ordinal = 0;
    int use_ordinal = 0;

    auto operator<=>(const DataFlowEdge&) const = default;
};

struct DataFlowGraph {
    std::set<DataFlowEdge> edges;
};

namespace detail {

inline bool is_scanf_family(const std::string& name) {
    return name == "scanf" || name == "fscanf" || name == "sscanf";
}

class DataFlowWalker {
  public:
    DataFlowGraph run(const Ast& ast) {
        push_scope();
        for (const AstNode& c : ast.root.children) walk_top(c);
        pop_scope();
        return std::move(graph_);
    }

  private:
    struct VarInst {
        std::string norm_name;  // assigned lazily at first event
        int next_site = 1;
    };

    using Env = std::map<const VarInst*, std::set<int>>;

    DataFlowGraph graph_;
    std::vector<std::vector<std::pair<std::string, VarInst*>>> scopes_;
    std::vector<std::unique_ptr<VarInst>> instances_;
    std::unordered_map<std::string, VarInst*> undeclared_;
    std::unordered_map<const AstNode*, VarInst*> decl_memo_;
    std::unordered_map<const AstNode*, int> use_site_memo_;
    std::unordered_map<const AstNode*, int> def_site_memo_;
    Env env_;
    int next_norm_ = 1;

    // ---- scopes and instances ----------------------------------------------
    void push_scope() { scopes_.emplace_back(); }
    void pop_scope() {
        for (auto& [name, inst] : scopes_.back()) env_.erase(inst);
        scopes_.pop_back();
    }

    VarInst* declare(const std::string& name, const AstNode* key) {
        auto it = decl_memo_.find(key);
        if (it != decl_memo_.end()) {
            scopes_.back().emplace_back(name, it->second);
            return it->second;
        }
        instances_.push_back(std::make_unique<VarInst>());
        VarInst* inst = instances_.back().get();
        decl_memo_[key] = inst;
        scopes_.back().emplace_back(name, inst);
        return inst;
    }

    // stdio objects and other library names never become dataflow variables
    static bool tracked(const std::string& name) {
        return default_stdlib_names().count(name) == 0;
    }

    VarInst* resolve(const std::string& name) {
        for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s)
            for (auto v = s->rbegin(); v != s->rend(); ++v)
                if (v->first == name) return v->second;
        auto it = undeclared_.find(name);
        if (it != undeclared_.end()) return it->second;
        instances_.push_back(std::make_unique<VarInst>());
        VarInst* inst = instances_.back().get();
        undeclared_[name] = inst;
        return inst;
    }

    const std::string& norm_name(VarInst* v) {
        if (v->norm_name.empty()) v->norm_name = "v" + std::to_string(next_norm_++);
        return v->norm_name;
    }

    int site_ordinal(VarInst* v, const AstNode* key,
                     std::unordered_map<const AstNode*, int>& memo) {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int ord = v->next_site++;
        memo[key] = ord;
        return ord;
    }

    // ---- events -------------------------------------------------------------
    void use_event(VarInst* v, const AstNode* key) {
        const std::string& name = norm_name(v);
        int ord = site_ordinal(v, key, use_site_memo_);
        auto it = env_.find(v);
        if (it == env_.end() || it->second.empty()) {
            graph_.edges.insert(DataFlowEdge{name, 0, ord});
            return;
        }
        for (int d : it->second) graph_.edges.insert(DataFlowEdge{name, d, ord});
    }

    void def_event(VarInst* v, const AstNode* key, bool weak) {
        norm_name(v);
        int ord = site_ordinal(v, key, def_site_memo_);
        if (weak)
            env_[v].insert(ord);
        else
            env_[v] = {ord};
    }

    // ---- env merging --------------------------------------------------------
    static void merge_into(Env& into, const Env& from) {
        for (const auto& [v, defs] : from) into[v].insert(defs.begin(), defs.end());
    }

    // ---- structure ----------------------------------------------------------
    void walk_top(const AstNode& n) {
        if (n.kind == "Declaration")
            walk_declaration(n);
        else if (n.kind == "FunctionDefinition")
            walk_function(n);
    }

    void walk_function(const AstNode& fn) {
        push_scope();
        if (fn.children.size() >= 2) declare_params(fn.children[1]);
        if (fn.children.size() >= 3) walk_stmt(fn.children[2]);
        pop_scope();
    }

    void declare_params(const AstNode& declarator) {
        for_each_node(declarator, [&](const AstNode& n) {
            if (n.kind != "ParameterDeclaration") return;
            std::string name;
            if (n.children.size() >= 2)
                name = declarator_name(n.children[1]);
            else if (n.children.size() == 1 && n.children[0].is_leaf)
                name = n.children[0].leaf_text;  // K&R identifier
            if (!name.empty()) declare(name, &n);
        });
    }

    void walk_declaration(const AstNode& decl) {
        for (const AstNode& c : decl.children) {
            if (c.kind != "InitDeclarator") continue;
            const AstNode& declarator = c.children[0];
            walk_declarator_sizes(declarator);
            std::string name = declarator_name(declarator);
            bool has_init = c.children.size() >= 3;
            if (has_init) walk_uses(c.children[2]);
            if (name.empty()) continue;
            VarInst* inst = declare(name, &c);
            if (has_init && !has_function_shape(declarator)) def_event(inst, &c, false);
        }
    }

    static bool has_function_shape(const AstNode& d) {
        if (d.kind == "FunctionDeclarator") return true;
        for (const AstNode& c : d.children)
            if (!c.is_leaf && has_function_shape(c)) return true;
        return false;
    }

    // Array size expressions are uses; inner dimensions precede outer ones in
    // the source, so recurse into the base first.
    void walk_declarator_sizes(const AstNode& d) {
        if (d.is_leaf) return;
        if (d.kind == "ArrayDeclarator") {
            if (!d.children.empty()) walk_declarator_sizes(d.children[0]);
            for (size_t i = 1; i < d.children.size(); ++i) {
                const AstNode& c = d.children[i];
                if (!c.is_leaf || c.kind == "Identifier") walk_uses(c);
            }
            return;
        }
        for (const AstNode& c : d.children) walk_declarator_sizes(c);
    }

    void walk_stmt(const AstNode& n) {
        if (n.is_leaf) return;
        const std::string& k = n.kind;
        if (k == "CompoundStatement") {
            push_scope();
            for (const AstNode& c : n.children) {
                if (c.kind == "Declaration")
                    walk_declaration(c);
                else
                    walk_stmt(c);
            }
            pop_scope();
        } else if (k == "ExpressionStatement" || k == "ReturnStatement") {
            for (const AstNode& c : n.children)
                if (!c.is_leaf) walk_uses(c);
        } else if (k == "IfStatement") {
            // children: if ( cond ) then [else stmt]
            walk_uses(n.children[2]);
            const AstNode* then_branch = n.children.size() > 4 ? &n.children[4] : nullptr;
            const AstNode* else_branch = n.children.size() > 6 ? &n.children[6] : nullptr;
            Env entry = env_;
            if (then_branch) walk_stmt(*then_branch);
            Env after_then = std::move(env_);
            env_ = entry;
            if (else_branch) walk_stmt(*else_branch);
            merge_into(env_, after_then);
            if (!else_branch) merge_into(env_, entry);
        } else if (k == "WhileStatement") {
            // children: while ( cond ) body
            const AstNode& cond = n.children[2];
            const AstNode* body = n.children.size() > 4 ? &n.children[4] : nullptr;
            run_loop(&cond, body, nullptr);
        } else if (k == "DoStatement") {
            // children: do body while ( cond ) ;
            const AstNode* body = n.children.size() > 1 ? &n.children[1] : nullptr;
            const AstNode* cond = nullptr;
            for (size_t i = 2; i < n.children.size(); ++i)
                if (!n.children[i].is_leaf) cond = &n.children[i];
            // body executes before the condition; same union fixpoint
            run_loop(cond, body, nullptr, /*body_first=*/true);
        } else if (k == "ForStatement") {
            // children: for ( ForInit ForCondition ForUpdate ) body
            push_scope();
            const AstNode *init = nullptr, *cond = nullptr, *update = nullptr, *body = nullptr;
            for (const AstNode& c : n.children) {
                if (c.kind == "ForInit") init = &c;
                else if (c.kind == "ForCondition") cond = &c;
                else if (c.kind == "ForUpdate") update = &c;
                else if (!c.is_leaf) body = &c;
            }
            if (init)
                for (const AstNode& c : init->children) {
                    if (c.kind == "Declaration")
                        walk_declaration(c);
                    else if (!c.is_leaf)
                        walk_uses(c);
                }
            const AstNode* cond_expr = nullptr;
            if (cond)
                for (const AstNode& c : cond->children)
                    if (!c.is_leaf) cond_expr = &c;
            const AstNode* update_expr = nullptr;
            if (update)
                for (const AstNode& c : update->children)
                    if (!c.is_leaf) update_expr = &c;
            run_loop(cond_expr, body, update_expr);
            pop_scope();
        } else if (k == "SwitchStatement") {
            walk_uses(n.children[2]);
            Env entry = env_;
            if (n.children.size() > 4) walk_stmt(n.children[4]);
            merge_into(env_, entry);
        } else if (k == "CaseLabel") {
            for (const AstNode& c : n.children) {
                if (c.is_leaf) continue;
                if (&c == &n.children.back())
                    walk_stmt(c);
                else
                    walk_uses(c);
            }
        } else if (k == "DefaultLabel" || k == "LabeledStatement") {
            if (!n.children.empty() && !n.children.back().is_leaf)
                walk_stmt(n.children.back());
        } else if (k == "Error") {
            for (const AstNode& c : n.children)
                if (c.is_leaf && c.kind == "Identifier" && tracked(c.leaf_text))
                    use_event(resolve(c.leaf_text), &c);
        } else if (k == "Declaration") {
            walk_declaration(n);
        } else {
            for (const AstNode& c : n.children) walk_stmt(c);
        }
    }

    // Two passes over (cond, body, update) so back-edge defs reach loop uses;
    // the edge set unions across passes, site ordinals are assigned once.
    void run_loop(const AstNode* cond, const AstNode* body, const AstNode* update,
                  bool body_first = false) {
        Env entry = env_;
        loop_pass(cond, body, update, body_first);
        Env first = std::move(env_);
        env_ = entry;
        merge_into(env_, first);
        Env merged = env_;
        loop_pass(cond, body, update, body_first);
        merge_into(env_, merged);
    }

    void loop_pass(const AstNode* cond, const AstNode* body, const AstNode* update,
                   bool body_first) {
        if (body_first) {
            if (body) walk_stmt(*body);
            if (cond) walk_uses(*cond);
        } else {
            if (cond) walk_uses(*cond);
            if (body) walk_stmt(*body);
            if (update) walk_uses(*update);
        }
    }

    // ---- expressions --------------------------------------------------------
    void walk_uses(const AstNode& n) {
        if (n.is_leaf) {
            if (n.kind == "Identifier" && tracked(n.leaf_text))
                use_event(resolve(n.leaf_text), &n);
            return;
        }
        const std::string& k = n.kind;
        if (k == "AssignmentExpression" && n.children.size() == 3) {
            const AstNode& lhs = n.children[0];
            const std::string& op = n.children[1].leaf_text;
            walk_uses(n.children[2]);
            walk_lvalue_write(lhs, /*reads_old_value=*/op != "=");
            return;
        }
        if ((k == "PrefixExpression" || k == "PostfixExpression") && n.children.size() == 2) {
            const AstNode& op = n.children[k == "PrefixExpression" ? 0 : 1];
            const AstNode& operand = n.children[k == "PrefixExpression" ? 1 : 0];
            if (op.leaf_text == "++" || op.leaf_text == "--") {
                walk_lvalue_write(operand, /*reads_old_value=*/true);
                return;
            }
            walk_uses(operand);
            return;
        }
        if (k == "CallExpression") {
            walk_call(n);
            return;
        }
        if (k == "MemberExpression") {
            walk_uses(n.children[0]);  // field name is not a variable
            return;
        }
        if (k == "CastExpression" || k == "SizeofExpression") {
            for (const AstNode& c : n.children)
                if (!c.is_leaf && c.kind != "TypeName") walk_uses(c);
            return;
        }
        for (const AstNode& c : n.children) walk_uses(c);
    }

    void walk_lvalue_write(const AstNode& lhs, bool reads_old_value) {
        if (lhs.is_leaf && lhs.kind == "Identifier") {
            if (!tracked(lhs.leaf_text)) return;
            VarInst* v = resolve(lhs.leaf_text);
            if (reads_old_value) use_event(v, &lhs);
            def_event(v, &lhs, /*weak=*/false);
            return;
        }
        if (lhs.kind == "IndexExpression" || lhs.kind == "MemberExpression") {
            walk_index_chain_uses(lhs);
            const AstNode* base = base_variable(lhs);
            if (base && tracked(base->leaf_text)) {
                VarInst* v = resolve(base->leaf_text);
                if (reads_old_value) use_event(v, base);
                def_event(v, base, /*weak=*/true);
            }
            return;
        }
        if (lhs.kind == "ParenExpression" && lhs.children.size() >= 2) {
            walk_lvalue_write(lhs.children[1], reads_old_value);
            return;
        }
        // *p = ... : the pointee is unknown, only the pointer read is recorded
        walk_uses(lhs);
    }

    // Uses inside the index chain of an lvalue (a[i][j], s.arr[k]), base
    // excluded.
    void walk_index_chain_uses(const AstNode& n) {
        if (n.is_leaf) return;
        if (n.kind == "IndexExpression") {
            if (!n.children.empty()) walk_index_chain_uses(n.children[0]);
            for (size_t i = 2; i < n.children.size(); ++i)
                if (!n.children[i].is_leaf || n.children[i].kind == "Identifier")
                    walk_uses(n.children[i]);
            return;
        }
        if (n.kind == "MemberExpression" || n.kind == "ParenExpression") {
            if (n.kind == "ParenExpression" && n.children.size() >= 2)
                walk_index_chain_uses(n.children[1]);
            else if (!n.children.empty())
                walk_index_chain_uses(n.children[0]);
            return;
        }
    }

    static const AstNode* base_variable(const AstNode& n) {
        if (n.is_leaf) return n.kind == "Identifier" ? &n : nullptr;
        if (n.kind == "IndexExpression" || n.kind == "MemberExpression")
            return base_variable(n.children[0]);
        if (n.kind == "ParenExpression" && n.children.size() >= 2)
            return base_variable(n.children[1]);
        return nullptr;
    }

    void walk_call(const AstNode& call) {
        const AstNode& callee = call.children[0];
        bool scanf_like = callee.is_leaf && is_scanf_family(callee.leaf_text);
        size_t out_args_from = callee.is_leaf && callee.leaf_text == "scanf" ? 1 : 2;
        if (!callee.is_leaf) walk_uses(callee);
        const AstNode* args = nullptr;
        for (const AstNode& c : call.children)
            if (c.kind == "ArgumentList") args = &c;
        if (!args) return;
        size_t arg_index = 0;
        for (const AstNode& c : args->children) {
            if (c.is_leaf && (c.leaf_text == "," || c.leaf_text == "(")) continue;
            if (scanf_like && arg_index >= out_args_from)
                walk_scanf_out_arg(c);
            else if (!c.is_leaf || c.kind == "Identifier")
                walk_uses(c);
            ++arg_index;
        }
    }

    void walk_scanf_out_arg(const AstNode& arg) {
        // &x fills x; &a[i] / &s.f / a bare array name fill part of the base
        if (arg.kind == "PrefixExpression" && arg.children.size() == 2 &&
            arg.children[0].leaf_text == "&") {
            const AstNode& target = arg.children[1];
            if (target.is_leaf && target.kind == "Identifier") {
                if (tracked(target.leaf_text))
                    def_event(resolve(target.leaf_text), &target, /*weak=*/false);
                return;
            }
            if (target.kind == "IndexExpression" || target.kind == "MemberExpression") {
                walk_index_chain_uses(target);
                const AstNode* base = base_variable(target);
                if (base && tracked(base->leaf_text))
                    def_event(resolve(base->leaf_text), base, /*weak=*/true);
                return;
            }
            walk_uses(target);
            return;
        }
        if (arg.is_leaf && arg.kind == "Identifier") {
            if (tracked(arg.leaf_text)) def_event(resolve(arg.leaf_text), &arg, /*weak=*/true);
            return;
        }
        if (arg.kind == "IndexExpression" || arg.kind == "MemberExpression") {
            walk_index_chain_uses(arg);
            const AstNode* base = base_variable(arg);
            if (base && tracked(base->leaf_text))
                def_event(resolve(base->leaf_text), base, /*weak=*/true);
            return;
        }
        walk_uses(arg);
    }
};

}  // namespace detail

inline DataFlowGraph extract_dataflow(const Ast& ast) {
    detail::DataFlowWalker w;
    return w.run(ast);
}

inline DataFlowGraph extract_dataflow(std::string_view source) {
    return extract_dataflow(parse_ast(source));
}

}  // namespace peerfix
