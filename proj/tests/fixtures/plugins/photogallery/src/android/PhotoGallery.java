package org.sample;

public class PhotoGallery extends CordovaPlugin {
  public boolean execute(String action, CallbackContext callbackContext) {
    JSONArray items = queryGallery();
    callbackContext.success(items);
    return true;
  }
}
