function startListening() {
  nfc.addNdefListener(function(nfcEvent) {
    console.log('tag: ' + nfcEvent.tag.id);
  }, function() {}, function() {});
}
