#include "lrc/cli.hpp"

int main(int argc, char** argv) { return lrc::cli::run(argc, argv); }
