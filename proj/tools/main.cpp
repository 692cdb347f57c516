#include "cli.hpp"

int main(int argc, char** argv) { return treeprop::cli::run(argc, argv); }
