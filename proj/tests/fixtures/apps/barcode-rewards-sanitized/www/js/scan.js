function scanCode() {
  window.plugins.barcodeScanner.scan(function(result) {
    $('#output').text(result.text);
  }, function(error) {
    alert('Scanning failed: ' + error);
  });
}
