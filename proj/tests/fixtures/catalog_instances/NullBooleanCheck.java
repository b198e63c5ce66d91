class SaveGuard {
  boolean canSave(Action saveAction) {
    return saveAction != null && saveAction.isEnabled();
  }
}

class Action {
  boolean enabled;

  boolean isEnabled() {
    return enabled;
  }
}
