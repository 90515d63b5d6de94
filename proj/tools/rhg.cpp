#include "cli.hpp"

int main(int argc, char** argv) { return rhg::cli::run(argc, argv); }
