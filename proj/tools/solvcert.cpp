#include "solvcert/cli.hpp"

int main(int argc, char** argv) { return solvcert::cli::main(argc, argv); }
