class Check9 {
  Config config;

  void ownerGuardA() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void ownerGuardB() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void ownerGuardC() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void ownerGuardD() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void ownerGuardE() {
    if (config.getOwner() == null) { log(); } // plant:c11
  }

  void log() {}
}
