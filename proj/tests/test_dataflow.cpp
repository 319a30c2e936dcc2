#include <catch2/catch_amalgamated.hpp>

#include <initializer_list>
#include <set>

#include "peerfix/dataflow.hpp"

using namespace peerfix;

namespace {

std::set<DataFlowEdge> edges_of(const char* src) {
    return extract_dataflow(src).edges;
}

std::set<DataFlowEdge> expect(std::initializer_list<DataFlowEdge> list) {
    return std::set<DataFlowEdge>(list);
}

}  // namespace

TEST_CASE("initialized declaration feeding a read gives one edge") {
    CHECK(edges_of("int a=1; int b=a;") == expect({{"v1", 1, 2}}));
}

TEST_CASE("declared but never used variable contributes no edges") {
    CHECK(edges_of("int main(){ int x; return 0; }").empty());
}

TEST_CASE("straight-line defs and uses") {
    auto got = edges_of("int main(){ int a=2; int b=a+a; printf(\"%d\",b); return b; }");
    CHECK(got == expect({{"v1", 1, 2}, {"v1", 1, 3}, {"v2", 1, 2}, {"v2", 1, 3}}));
}

TEST_CASE("scanf output argument is a def site") {
    auto got = edges_of("int main(){ int n; scanf(\"%d\",&n); printf(\"%d\",n+1); return 0; }");
    CHECK(got == expect({{"v1", 1, 2}}));
}

TEST_CASE("if/else merges reaching defs by union") {
    auto got = edges_of(
        "int main(){ int a=1; int b=0; if(a>0){ b=1; } else { b=2; } printf(\"%d\",b);"
        " return 0; }");
    CHECK(got == expect({{"v1", 1, 2}, {"v2", 2, 4}, {"v2", 3, 4}}));
}

TEST_CASE("while loop back edge reaches loop-top uses") {
    auto got = edges_of(
        "int main(){ int s=0; int i=0; while(i<3){ s=s+i; i=i+1; } printf(\"%d\",s);"
        " return 0; }");
    CHECK(got == expect({
        {"v1", 1, 2}, {"v1", 3, 2}, {"v1", 1, 4}, {"v1", 3, 4},          // s
        {"v2", 1, 2}, {"v2", 5, 2}, {"v2", 1, 3}, {"v2", 5, 3},          // i
        {"v2", 1, 4}, {"v2", 5, 4},
    }));
}

TEST_CASE("for loop with header update") {
    auto got = edges_of("int main(){ int t=0; for(int i=0;i<3;i++){ t+=i; } return t; }");
    CHECK(got == expect({
        {"v1", 1, 2}, {"v1", 3, 2}, {"v1", 1, 4}, {"v1", 3, 4},          // t
        {"v2", 1, 2}, {"v2", 5, 2}, {"v2", 1, 3}, {"v2", 5, 3},          // i
        {"v2", 1, 4}, {"v2", 5, 4},
    }));
}

TEST_CASE("do-while runs the body before the condition") {
    auto got = edges_of("int main(){ int k=0; do { k++; } while(k<2); return k; }");
    CHECK(got == expect(
        {{"v1", 1, 2}, {"v1", 3, 2}, {"v1", 3, 4}, {"v1", 1, 5}, {"v1", 3, 5}}));
}

TEST_CASE("use before any def pairs with the synthetic def 0") {
    CHECK(edges_of("int main(){ int b = a + 1; return b; }") ==
          expect({{"v1", 0, 1}, {"v2", 1, 2}}));
}

TEST_CASE("array element writes are weak defs") {
    auto got = edges_of("int main(){ int a[3]; a[0]=1; a[1]=2; return a[0]+a[1]; }");
    CHECK(got == expect({{"v1", 1, 3}, {"v1", 2, 3}, {"v1", 1, 4}, {"v1", 2, 4}}));
}

TEST_CASE("struct member write then read") {
    auto got = edges_of(
        "struct p { int x; }; int main(){ struct p q; q.x = 5; return q.x; }");
    CHECK(got == expect({{"v1", 1, 2}}));
}

TEST_CASE("identical sources give identical graphs, renamed sources too") {
    const char* a = "int main(){ int sum=0; for(int i=0;i<9;i++) sum+=i; return sum; }";
    const char* b = "int main(){ int acc=0; for(int k=0;k<9;k++) acc+=k; return acc; }";
    CHECK(extract_dataflow(a).edges == extract_dataflow(a).edges);
    CHECK(extract_dataflow(a).edges == extract_dataflow(b).edges);
}

TEST_CASE("library names never appear as variables") {
    auto got = edges_of("int main(){ int x=1; fprintf(stdout, \"%d\", x); return 0; }");
    CHECK(got == expect({{"v1", 1, 2}}));
}
