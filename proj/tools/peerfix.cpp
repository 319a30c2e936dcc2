#include <cstdio>

int main() {
    std::puts("peerfix: placeholder");
    return 0;
}
