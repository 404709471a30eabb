#include "pclabel/cli.hpp"

int main(int argc, char** argv) { return pclabel::cli::run(argc, argv); }
