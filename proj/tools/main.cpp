#include "cli_app.hpp"

int main(int argc, char** argv) { return sierpinski::cli::run(argc, argv); }
