#include <iostream>

#include "puocs/cli.hpp"

int main(int argc, char** argv)
{
    puocs::cli::Hooks hooks;
#ifdef PUOCS_INJECT_LITERAL_INVERSE
    hooks.inverse = puocs::InverseVariant::printed;
#endif
    return puocs::cli::run(argc, argv, std::cout, std::cerr, hooks);
}
