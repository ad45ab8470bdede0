#include "dilhof/cli.hpp"

int main(int argc, char** argv) { return dilhof::cli::run(argc, argv); }
