#include <cstdio>
int main() { std::puts("pnlab placeholder"); return 0; }
