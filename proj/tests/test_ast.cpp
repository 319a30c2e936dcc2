#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "peerfix/ast.hpp"
#include "peerfix/subtrees.hpp"

using namespace peerfix;

namespace {

bool contains_kind(const AstNode& root, const std::string& kind) {
    bool found = false;
    for_each_node(root, [&](const AstNode& n) {
        if (n.kind == kind) found = true;
    });
    return found;
}

size_t leaf_count(const AstNode& root) {
    size_t count = 0;
    for_each_node(root, [&](const AstNode& n) {
        if (n.is_leaf) ++count;
    });
    return count;
}

}  // namespace

TEST_CASE("minimal program parses to one function definition") {
    Ast ast = parse_ast("int main(){return 0;}");
    REQUIRE(ast.root.kind == "TranslationUnit");
    REQUIRE(ast.root.children.size() == 1);
    CHECK(ast.root.children[0].kind == "FunctionDefinition");
}

TEST_CASE("empty file gives an empty tree") {
    Ast ast = parse_ast("");
    CHECK(ast.root.children.empty());
}

TEST_CASE("stray brace becomes an Error node, not a failure") {
    Ast ast = parse_ast("int main(){return 0;}\n}");
    CHECK(contains_kind(ast.root, "Error"));
    CHECK(contains_kind(ast.root, "FunctionDefinition"));
}

TEST_CASE("every token appears as a leaf") {
    const char* src =
        "#include <stdio.h>\n"
        "int g[3][4];\n"
        "struct point { int x, y; };\n"
        "int add(int a, int b) { return a + b; }\n"
        "int main(void) {\n"
        "  struct point p; p.x = 1; p.y = 2;\n"
        "  int n; scanf(\"%d\", &n);\n"
        "  for (int i = 0; i < n; i++) { g[0][i % 4] += add(p.x, p.y); }\n"
        "  switch (n) { case 1: puts(\"one\"); break; default: break; }\n"
        "  while (n > 0) n--;\n"
        "  do { n++; } while (n < 1);\n"
        "  printf(\"%d %d\\n\", g[0][0], n);\n"
        "  return 0;\n"
        "}\n";
    TokenStream ts = tokenize(src);
    Ast ast = parse_ast(ts);
    CHECK(leaf_count(ast.root) == ts.tokens.size());
    CHECK_FALSE(contains_kind(ast.root, "Error"));
}

TEST_CASE("common student constructs parse without error nodes") {
    const char* sources[] = {
        "int main(){ int a=1,b=2,c; c = a>b ? a : b; return c; }",
        "double area(double r){ return 3.14159*r*r; }",
        "int main(){ char s[100]; fgets(s, 100, stdin); printf(\"%s\", s); return 0; }",
        "typedef struct { int x; } pt; int main(){ pt p; p.x = 3; return p.x; }",
        "int fact(int n){ if(n<=1) return 1; return n*fact(n-1); }",
        "int main(){ int *p, a = 2; p = &a; *p = 5; return *p; }",
        "void sort(int v[], int n){ for(int i=0;i<n;i++) for(int j=i+1;j<n;j++)"
        " if(v[j]<v[i]){ int t=v[i]; v[i]=v[j]; v[j]=t; } }",
        "int main(){ long long x = 1LL << 40; unsigned u = 0u; return (int)(x % 7) + (int)u; }",
    };
    for (const char* src : sources) {
        INFO(src);
        Ast ast = parse_ast(src);
        CHECK_FALSE(contains_kind(ast.root, "Error"));
    }
}

TEST_CASE("recoverable garbage still yields surrounding structure") {
    Ast ast = parse_ast("int main(){ int x = ; @@ garbage here; return 0; }");
    CHECK(contains_kind(ast.root, "FunctionDefinition"));
    CHECK(contains_kind(ast.root, "ReturnStatement"));
    CHECK(contains_kind(ast.root, "Error"));
}

TEST_CASE("parse is deterministic") {
    const char* src = "int main(){ for(;;) break; return 0; }";
    auto a = oracle::serialize_subtree(parse_ast(src).root);
    auto b = oracle::serialize_subtree(parse_ast(src).root);
    CHECK(a == b);
}

TEST_CASE("subtree bag size equals independent internal node count") {
    const char* sources[] = {
        "int main(){int x=0;return x;}",
        "int f(void){return 1;} int main(){return f();}",
        "int main(){ if (1) { int y = 2; } return 0; }",
    };
    for (const char* src : sources) {
        Ast ast = parse_ast(src);
        SubtreeBag bag = enumerate_subtrees(ast);
        CHECK(bag.total == oracle::count_internal_nodes(ast.root));
        CHECK(bag.total == internal_node_count(ast.root));
    }
}

TEST_CASE("identical and alpha-renamed sources give identical bags") {
    Ast a = parse_ast("int main(){int count=0; count++; return count;}");
    Ast b = parse_ast("int main(){int total=0; total++; return total;}");
    SubtreeBag ba = enumerate_subtrees(a);
    SubtreeBag bb = enumerate_subtrees(b);
    REQUIRE(ba.total == bb.total);
    CHECK(ba.counts == bb.counts);
}
