class TokenClassifier {
  void classify(String token, String s) {
    switch(token.length()) { case 1: char c = s.charAt(1); if (c == 'f') { mark(); } break; default: break; }
  }

  void mark() {}
}
