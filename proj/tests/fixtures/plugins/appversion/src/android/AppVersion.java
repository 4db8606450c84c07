package org.sample;

public class AppVersion extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    String version = packageVersionName();
    callbackContext.success(version);
    return true;
  }
}
