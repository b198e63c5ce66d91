class CompilerFactory {
  Object create(String compilerType) {
    if ("jikes".equalsIgnoreCase(compilerType)) {return new Jikes();} if ("extjavac".equalsIgnoreCase(compilerType)) {return new JavacExternal();} return null;
  }
}

class Jikes {
}

class JavacExternal {
}
