#include "wild/cli.hpp"

int main(int argc, char** argv) { return wild::dispatch(argc, argv); }
