#include "iwk/cli.hpp"

int main(int argc, char** argv) { return iwk::cli::run(argc, argv); }
