#include "deltaef/io.hpp"

int main(int argc, char** argv) { return deltaef::run_cli(argc, argv); }
