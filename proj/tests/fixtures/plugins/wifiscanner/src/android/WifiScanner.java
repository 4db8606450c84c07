package org.sample;

public class WifiScanner extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    JSONArray results = scanForAccessPoints();
    callbackContext.success(results);
    return true;
  }
}
