#include "cli.hpp"

int main(int argc, char** argv) { return impact_game::cli::main_entry(argc, argv); }
