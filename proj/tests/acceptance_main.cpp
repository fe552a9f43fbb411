#include "geoconst/geoconst.hpp"
int main() { return 0; }
