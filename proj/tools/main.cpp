#include "pathens/cli.hpp"

int main(int argc, char** argv) { return pathens::cli::main_entry(argc, argv); }
