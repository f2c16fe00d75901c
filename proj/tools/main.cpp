#include "euler1d/cli.hpp"

int main(int argc, char** argv) { return euler1d::cli::run(argc, argv); }
