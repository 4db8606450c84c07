package org.sample;

public class Splashscreen extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    doSplashscreen();
    callbackContext.success();
    return true;
  }
}
