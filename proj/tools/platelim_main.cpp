#include <cstdio>
int main(){ std::puts("platelim"); return 0; }
