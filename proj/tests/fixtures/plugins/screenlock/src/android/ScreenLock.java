package org.sample;

public class ScreenLock extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    doScreenLock();
    callbackContext.success();
    return true;
  }
}
