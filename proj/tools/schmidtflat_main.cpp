#include <cstdio>

int main() {
    std::puts("schmidtflat: subcommands pending");
    return 0;
}
