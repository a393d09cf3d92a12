#include "bsort/cli.hpp"

int main(int argc, char** argv) { return bsort::cli::run(argc, argv); }
