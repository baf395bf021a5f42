// Realizes a spectrum given on the command line and prints the certificate.
#include <spectratope/spectratope.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace spectratope;
    const std::string text = argc > 1 ? argv[1] : "3,-1,-1,-1";
    try {
        const Spectrum sigma = parse_spectrum(text);
        const RealizationCertificate c = realize_auto(sigma.values());
        std::cout << "method: " << to_string(c.method) << "\n";
        std::cout << io::matrix_text(c.realizer);
        std::cout << "verified: " << std::boolalpha << verify_certificate(c, sigma).passed() << "\n";
    } catch (const RealizationError& e) {
        std::cout << e.what() << "\n" << io::to_json(e.report()).dump(2) << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
