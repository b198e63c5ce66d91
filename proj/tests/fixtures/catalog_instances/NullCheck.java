class Session {
  void validate(String name) {
    if(name == null)
      reject();
  }

  void reject() {}
}
