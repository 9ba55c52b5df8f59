#include "tcat/cli.hpp"

int main(int argc, char** argv) { return tcat::run(argc, argv); }
